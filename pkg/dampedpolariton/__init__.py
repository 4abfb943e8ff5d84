# coding: utf-8

"""
damped-polariton numerics: dielectric models, complex dispersion, velocity sum
rules, transient coefficients and the time-dependent emission rate
"""

__version__ = "0.1.0"
