import asyncio
import concurrent.futures
import logging

from typing import Callable, Coroutine, List, Sequence, TypeVar


Job = TypeVar("Job")
Result = TypeVar("Result")


async def _run_job(
    semaphore: asyncio.Semaphore,
    executor: concurrent.futures.Executor,
    function: Callable[[Job], Result],
    job: Job,
) -> Result:
    async with semaphore:
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(executor, function, job)


async def run_jobs(
    function: Callable[[Job], Result], jobs: Sequence[Job], workers: int = 1
) -> List[Result]:
    """
    Args:
        function (Callable[[Job], Result]): Runs one job, in a worker thread.
        jobs (Sequence[Job]): The jobs.
        workers (int): The maximum number of jobs running at once.

    Returns:
        List[Result]: One result per job, in the order of the jobs.
    """
    workers = max(1, workers)
    logging.info(f"Running {len(jobs)} jobs on {workers} workers.")
    semaphore = asyncio.Semaphore(workers)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        tasks: List[Coroutine] = [_run_job(semaphore, executor, function, job) for job in jobs]
        return list(await asyncio.gather(*tasks))


def run_jobs_sync(
    function: Callable[[Job], Result], jobs: Sequence[Job], workers: int = 1
) -> List[Result]:
    return asyncio.run(run_jobs(function, jobs, workers))
