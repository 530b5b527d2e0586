## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
================
Data Set Files
================

Reading and writing labeled data sets as delimited text (UCI style files:
one sample per row, one column holding the class).

Lines starting with ``#`` are comments. A comment of ``key=value`` pairs
(as written by :func:`saveDelimited`) is kept as the data set metadata. Rows
with a missing cell (empty, ``?``, ``NA``, ``nan``) are dropped.
"""

from __future__ import division

import csv, logging, math

import numpy

from .errors import ParseError, EmptyAfterCleaning
from .labeledMatrix import LabeledMatrix
from .genericutils import fileFromName

__all__ = ["MISSING", "loadDelimited", "saveDelimited"]

_log = logging.getLogger(__name__)

MISSING = ("", "?", "na", "nan", "null")

def _parseMeta(line) :
  meta = dict()
  for tok in line.lstrip("#").split() :
    if '=' in tok :
      k, v = tok.split('=', 1)
      try :
        v = int(v)
      except ValueError :
        try :
          v = float(v)
        except ValueError :
          pass
      meta[k] = v
  return meta

def _isNumber(s) :
  try :
    float(s)
    return True
  except ValueError :
    return False

def loadDelimited(path, labelColumn = -1, delimiter = ',', header = None) :
  """ Read a labeled data set.

  Class labels are mapped to ids 0,1,... in order of first appearance; the
  original names are kept in meta["classNames"]. Files written by
  saveDelimited (a ``classIds=k`` metadata entry) keep their class ids.

  :param path: file name (.gz/.bz2 accepted)
  :param labelColumn: index of the class column (negative counts from the end)
  :param delimiter: cell separator (None for any whitespace)
  :param header: True/False, or None to detect a non-numeric first row
  :returns: LabeledMatrix (features x samples)
  """

  meta = dict()
  with fileFromName(path) as f :
    lines = []
    for lineNo, line in enumerate(f, 1) :
      s = line.strip()
      if not s :
        continue
      if s[0] == '#' :
        meta.update(_parseMeta(s))
        continue
      lines.append((lineNo, s))

  if delimiter is None :
    cells = [(n, s.split()) for n,s in lines]
  else :
    cells = [(n, [c.strip() for c in r])
             for (n, _), r in zip(lines, csv.reader([s for _,s in lines],
                                                    delimiter = delimiter))]

  if cells :
    first = cells[0][1]
    lc = labelColumn % len(first)
    if header is None :
      header = not all(_isNumber(c) or c.lower() in MISSING
                       for i,c in enumerate(first) if i != lc)
    if header :
      meta["columns"] = first
      cells = cells[1:]

  features, raw = [], []
  dropped = 0
  nCols = None
  for lineNo, r in cells :
    if nCols is None :
      nCols = len(r)
    if len(r) != nCols :
      raise ParseError(lineNo, len(r), "expected %d cells" % nCols)
    lc = labelColumn % nCols

    if any(c.lower() in MISSING for c in r) :
      dropped += 1
      continue

    vals = []
    for col, c in enumerate(r) :
      if col == lc :
        continue
      try :
        v = float(c)
      except ValueError :
        raise ParseError(lineNo, col, c)
      if not math.isfinite(v) :
        raise ParseError(lineNo, col, c)
      vals.append(v)

    raw.append(r[lc])
    features.append(vals)

  if dropped :
    _log.warning("%s: dropped %d rows with missing values", path, dropped)
  if len(features) < 2 :
    raise EmptyAfterCleaning("%s: %d usable rows" % (path, len(features)))

  k = meta.pop("classIds", None)
  saved = meta.pop("classNames", None)
  if isinstance(k, int) and all(l.isdigit() and int(l) < k for l in raw) :
    labels = [int(l) for l in raw]
    names = [str(j) for j in range(k)]
    if isinstance(saved, str) and len(saved.split('|')) == k :
      names = saved.split('|')
  else :
    index = dict()
    for l in raw :
      index.setdefault(l, len(index))
    names = list(index)
    labels = [index[l] for l in raw]

  meta.update({"source" : str(path), "droppedRows" : dropped,
               "classNames" : names})
  return LabeledMatrix.fromSamples(numpy.array(features), labels, len(names), meta)

def saveDelimited(lm, path, delimiter = ',') :
  """ Write a labeled matrix as delimited text, one sample per row and the
  class id in the last column.

  The first line is a comment with the metadata (e.g.
  ``# classIds=2 seed=1 sd=1.0 shape=blobs``) followed by a header row.
  ``classIds`` lets loadDelimited read the ids back unchanged.
  """

  items = dict([(k, v) for k,v in lm.meta.items()
                if isinstance(v, (int, float, str)) and ' ' not in str(v)
                and k not in ("classIds", "classNames")])
  items["classIds"] = lm.k
  names = [str(n) for n in lm.meta.get("classNames", ())]
  if len(names) == lm.k and not any(' ' in n or '|' in n for n in names) :
    items["classNames"] = "|".join(names)

  with open(path, "w", newline = '') as f :
    f.write("# " + " ".join(["%s=%s" % kv for kv in sorted(items.items())]) + "\n")
    w = csv.writer(f, delimiter = delimiter, lineterminator = "\n")
    w.writerow(["f%d" % i for i in range(lm.nFeatures)] + ["label"])
    for x, lab in zip(lm.samples(), lm.labels) :
      w.writerow(["%.17g" % v for v in x] + [int(lab)])
