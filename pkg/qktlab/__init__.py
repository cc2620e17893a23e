# Treats qktlab as a package so absolute imports work in scripts and tests.
