"""Twisted FRT construction: quantum matrix bialgebras whose entries need not
commute with the coordinates of the quantum space they coact on."""

__version__ = "0.1.0"
