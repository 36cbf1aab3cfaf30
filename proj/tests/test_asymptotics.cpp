int placeholder_test_asymptotics() { return 0; }
