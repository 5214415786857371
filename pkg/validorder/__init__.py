__version__ = '0.3.0'
__author__ = 'Raul Mojica Soto-Albors'
__about__ = f"""validorder constructs, certifies and verifies orderings of
    finite subsets of abelian groups whose partial sums are pairwise distinct.
    \n\nvalidorder \t Version {__version__}
    \nCopyright © 2023 by {__author__}
"""
