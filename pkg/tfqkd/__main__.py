from .Cli import main

raise SystemExit(main())
