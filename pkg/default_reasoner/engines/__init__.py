"""Entailment engines and the algebra they share."""
