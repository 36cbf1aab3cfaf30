int placeholder_test_geometry() { return 0; }
