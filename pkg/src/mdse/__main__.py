from mdse.cli import main

main()
