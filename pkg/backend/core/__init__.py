"""Core functionality: election model, rules, verifiers, kernels and the lab."""
