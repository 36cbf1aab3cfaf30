int placeholder_test_solver() { return 0; }
