from orientk.cli import main


raise SystemExit(main())
