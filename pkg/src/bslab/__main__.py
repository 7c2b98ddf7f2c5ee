from bslab.cli import main; import sys; sys.exit(main())
