"""Input/output and backend adapters for tfan"""
