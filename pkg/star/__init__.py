# Star products and quantization package
