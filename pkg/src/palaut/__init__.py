"""Computational toolkit for palindromic automorphisms of free groups.

Modules: ``freeword`` (reduced and parametric words), ``fgauto``
(automorphisms as image tuples, the palindromic generators and relations),
``wpfamily`` (the W_p word family and its substitution audit), ``dehn``
(exact van Kampen area and Dehn-function profiles), ``nielsen`` (Nielsen
graphs of finite groups) and ``cli``.
"""

from .freeword import P, LinExpr, Word, linear, parse_word, format_word

__version__ = "0.1.0"
