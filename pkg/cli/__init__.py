"""Command-line front end for the critical wave experiments."""
