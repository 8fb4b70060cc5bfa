"""Application polytopes: core partitions, numerical semigroups, tableaux."""
