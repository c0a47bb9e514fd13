"""Module for AOD addressing and pulse-program compilation."""
