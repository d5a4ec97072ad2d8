"""Values, environments, the evaluator and the builtin library."""
