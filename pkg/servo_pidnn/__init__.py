"""Servo PIDNN - closed-loop PID neural network speed control simulation."""

__version__ = "0.1.0"
