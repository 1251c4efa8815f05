# Enveloping algebra package
