"""Test helper package so modules can import from tests.conftest."""
