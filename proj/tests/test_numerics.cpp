int placeholder_test_numerics() { return 0; }
