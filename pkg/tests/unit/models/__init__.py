"""
Unit tests for the lab's Pydantic models.

Test modules:
- test_models.py: rewards, element policies, layouts and games, noise,
  protocol, agent config, experiment specs and result models
- fixtures.py: raw payload builders and dotted-path helpers
"""
