"""Integration tests."""







