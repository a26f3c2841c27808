"""Command-line front end for the psram toolkit."""
