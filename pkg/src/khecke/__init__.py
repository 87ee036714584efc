"""khecke - Hecke insertion, K-Knuth classes and K-theoretic Littlewood-Richardson rules."""
__version__ = "0.1.0"
__author__ = "khecke developers"
