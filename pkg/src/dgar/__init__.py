"""Homological invariants of finite-dimensional DG algebras and their compact modules."""
