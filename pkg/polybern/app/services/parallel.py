"""Process-pool fan-out with an optional progress bar."""

from __future__ import annotations

import multiprocessing
from typing import Callable, Iterable, Optional

from tqdm import tqdm


def pbar(it: Iterable, total: Optional[int] = None, desc: Optional[str] = None,
         verbose: bool = False):
    """Wrap *it* in a tqdm bar on stderr when *verbose*."""
    if verbose:
        bf = '{l_bar}{bar}| {n_fmt}/{total_fmt} ({elapsed}<{remaining})'
        return tqdm(it, total=total, desc=desc, leave=False, bar_format=bf)
    return it


def apply_pool(func: Callable, arguments: Iterable, jobs: int = 1,
               verbose: bool = False, desc: Optional[str] = None) -> list:
    """Apply *func* to every argument tuple, in order.

    With ``jobs > 1`` the calls run in a ``multiprocessing.Pool``; results come
    back in argument order either way, so callers see identical output.
    *func* must be a module-level function so it can be pickled.
    """
    arguments = [arg if isinstance(arg, tuple) else (arg,) for arg in arguments]
    if jobs <= 1 or len(arguments) <= 1:
        return [func(*arg) for arg in pbar(arguments, total=len(arguments), desc=desc, verbose=verbose)]
    with multiprocessing.Pool(processes=jobs) as pool:
        results = pool.starmap_async(func, arguments)
        return results.get()
