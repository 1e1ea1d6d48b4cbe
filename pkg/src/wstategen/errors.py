"""Exception types shared across the package.

Invalid arguments raise the stdlib ``ValueError``; only failure modes that
callers need to tell apart get their own class.
"""


class CapacityError(Exception):
    """Raised when a request exceeds the exact-enumeration limits.

    Permanents cost O(2^k) and output-pattern counts grow combinatorially,
    so oversized requests fail loudly instead of hanging.
    """
