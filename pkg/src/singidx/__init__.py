"""singidx: GSV and homological indices of collections of 1-forms on isolated singularities."""

__version__ = "0.1.0"
