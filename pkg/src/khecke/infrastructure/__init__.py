"""Infrastructure layer - configuration, logging, serialization and observability."""
