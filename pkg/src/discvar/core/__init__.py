"""Exact algebra kernel, discriminant-variety pipeline and finite-field oracle."""
