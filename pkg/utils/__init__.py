"""Utility functions for tfan"""
