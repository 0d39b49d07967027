"""Built-in causal structures, named inequalities and witness distributions."""
