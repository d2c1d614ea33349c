"""
Models package.

Domain types for the vehicular beam-management POMDP: scenario configuration
(core), value types (entities) and repository-style collections.
"""
