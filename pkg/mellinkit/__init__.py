# mellinkit - Mellin/Fourier convolution symbol calculus
"""
mellinkit: symbols, Fredholm analysis and a numerical operator lab for
Mellin and Fourier convolution operators on the half-line.
"""

__version__ = "0.1.0"
__author__ = "ind4skylivey"
