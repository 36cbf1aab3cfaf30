int placeholder_test_pulse() { return 0; }
