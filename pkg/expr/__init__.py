# Expression language package
