int placeholder_test_diagnostics() { return 0; }
