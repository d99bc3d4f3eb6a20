"""Pattern matching under weighted edit distance."""
