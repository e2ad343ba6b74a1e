"""Lattice, polyhedra, divisor and fan models for tfan"""
