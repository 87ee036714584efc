"""Domain layer - pure combinatorics of increasing tableaux and Grothendieck polynomials."""
