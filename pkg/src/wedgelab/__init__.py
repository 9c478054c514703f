"""Wedge geometry, Poincaré reconstruction and finite modular theory checks."""
