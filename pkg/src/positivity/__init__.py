# Transfer matrices, sun-graph counterexamples and positivity sampling
