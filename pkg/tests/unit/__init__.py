"""Unit tests."""







