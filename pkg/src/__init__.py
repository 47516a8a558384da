"""KnownOpt: Bayesian optimization with a known optimum value."""
