# Symbol core package
