"""Test suite for servo PIDNN simulations."""
