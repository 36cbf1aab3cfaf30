int placeholder_test_harness() { return 0; }
