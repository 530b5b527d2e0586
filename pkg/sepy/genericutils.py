## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
===============
Generic Helpers
===============

That have nothing to do with data separability.
"""

__all__ = ["fileFromName", "tohms", "threadCount", "orderedMap"]

import os, os.path, gzip, bz2

def tohms(seconds) :
  """ Elapsed time as [h:]mm:ss.

  >>> tohms(3725), tohms(59)
  ('1:02:05', '00:59')
  """

  if seconds < 0 :
    return "??:??"
  m, s = divmod(seconds, 60)
  h, m = divmod(m, 60)
  if h > 0 :
    return "%d:%02d:%02d" % (h, m, s)
  return "%02d:%02d" % (m, s)

def fileFromName(fname, mode = "rt") :
  """A Python (text) file object from (possibly compressed) disk file.

  If file has a common suffix (.gz,.bz2) use that as a guide. If fname does
  not exist, look for a compressed file with the same stem.

  :param fname: file name
  """

  if os.path.exists(fname) :
    if fname.endswith(".gz") :
      return gzip.open(fname, mode)
    if fname.endswith(".bz2") :
      return bz2.open(fname, mode)
    return open(fname, mode)
  if os.path.exists(fname + ".gz") :
    return gzip.open(fname + ".gz", mode)
  if os.path.exists(fname + ".bz2") :
    return bz2.open(fname + ".bz2", mode)

  raise IOError("no such file " + fname)

def threadCount() :
  """ Worker count from the SEPY_THREADS environment variable (default 1)."""
  try :
    return max(1, int(os.environ.get("SEPY_THREADS", "1")))
  except ValueError :
    return 1

def orderedMap(f, items, nThreads = None) :
  """ [f(x) for x in items], possibly evaluated by a thread pool.

  The result order is the order of items regardless of the number of
  threads.
  """

  if nThreads is None :
    nThreads = threadCount()
  items = list(items)
  if nThreads <= 1 or len(items) <= 1 :
    return [f(x) for x in items]

  from concurrent.futures import ThreadPoolExecutor
  with ThreadPoolExecutor(max_workers = nThreads) as pool :
    return list(pool.map(f, items))
