# Split deletion - REST API layer
