"""Finite models of binary relations, multirelations and their liftings."""
