"""
heatwave-ac - expected residential electricity demand from mobile air conditioning.

This package simulates hourly AC load per census grid cell and nationally from
household counts, presence probabilities and station temperatures.
"""

__version__ = "0.1.0"
