# Tests for the split-deletion solvers
