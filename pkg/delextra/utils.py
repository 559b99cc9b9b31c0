import logging
import os


logger = logging.getLogger(__name__)


THREADS_VARIABLE = 'DELEXTRA_THREADS'


def format_float(value, digits=12):
    """Format ``value`` with ``digits`` significant digits"""
    return f'{value:.{digits}g}'


def worker_count(requested=None):
    """Number of parallel workers to use.

    The DELEXTRA_THREADS environment variable caps the count. Without a
    ``requested`` count, the cap itself is used, or 1 when it is unset.
    """
    cap = None
    value = os.environ.get(THREADS_VARIABLE, '')
    if value:
        try:
            cap = max(1, int(value))
        except ValueError:
            logger.warning(f'Ignoring {THREADS_VARIABLE}={value!r}, not an integer')
    if requested is None:
        return cap or 1
    requested = max(1, int(requested))
    return min(requested, cap) if cap else requested
