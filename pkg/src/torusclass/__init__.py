"""Class numbers of norm tori and dual tori over Q from exact Tate cohomology."""

__version__ = "0.1.0"
