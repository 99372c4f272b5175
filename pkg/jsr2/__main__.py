from jsr2.cli import main

raise SystemExit(main())
