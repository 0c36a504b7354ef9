from lpplab.cli import main

raise SystemExit(main())
