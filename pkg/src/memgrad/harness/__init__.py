"""Command line front end and experiment registry."""
