from validorder.run import main

main()
