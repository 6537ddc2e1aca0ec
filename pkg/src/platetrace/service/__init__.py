"""Vehicle tracing backend: journal-persisted traces, watches, and alerting."""
