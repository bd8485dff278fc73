"""
Детерминированный симулятор водительского коуча на LLM
"""

__version__ = "0.1.0"
