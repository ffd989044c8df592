import logging

from joblib import Parallel, delayed

from utils.settings import load_settings

logger = logging.getLogger(__name__)


def run_parallel(func, tasks, threads=None):
    """
    Evaluate ``func(*task)`` for every task, preserving task order.

    Parameters:
    -----------
    func : callable
        Module-level function (must be picklable for worker processes)
    tasks : iterable of tuple
        Argument tuples
    threads : int, optional
        Worker count; defaults to the configured thread count

    Returns:
    --------
    list
        Results in the order of ``tasks``
    """
    tasks = list(tasks)
    if threads is None:
        threads = load_settings().threads
    if threads <= 1 or len(tasks) <= 1:
        return [func(*task) for task in tasks]
    logger.info("dispatching %d tasks to %d workers", len(tasks), threads)
    return Parallel(n_jobs=threads)(delayed(func)(*task) for task in tasks)
