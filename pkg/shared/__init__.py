# Shared utilities for helly-lab: errors, config, parsing, emission
