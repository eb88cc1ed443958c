"""Test package for shellergm."""
