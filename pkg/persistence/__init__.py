"""On-disk formats: CSV codebooks (.cbk.csv) and binary index maps (.vqi)."""
