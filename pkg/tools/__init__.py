"""Command implementations for tfan"""
