"""tfan - polyhedral divisors, divisorial fans and A-coverings on P^1"""

__version__ = "0.1.0"
