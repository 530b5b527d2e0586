## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
=======
Reports
=======

Machine readable output of the command line tools: JSON documents that embed
a run manifest, and CSV plot data files with a commented header line.

JSON is written with sorted keys and a fixed indent, and nothing time
dependent is included unless asked for, so a re-run with the same seed and
inputs gives a byte identical document.
"""

from __future__ import division

import csv, hashlib, json, logging, math, os.path, sys, time

import numpy

from . import __version__

__all__ = ["RunManifest", "fileDigest", "toJson", "writeJson", "writeCsv"]

_log = logging.getLogger(__name__)

def fileDigest(path) :
  """ sha256 of a file, or of the files of a directory (sorted by name)."""

  h = hashlib.sha256()
  if os.path.isdir(path) :
    files = sorted(os.listdir(path))
    for fname in files :
      h.update(fname.encode("utf-8"))
      with open(os.path.join(path, fname), "rb") as f :
        h.update(f.read())
  else :
    with open(path, "rb") as f :
      for chunk in iter(lambda : f.read(1 << 20), b"") :
        h.update(chunk)
  return h.hexdigest()

class RunManifest(object) :
  """ What was run: subcommand, configuration echo, master seed, digests of
  the input files and the tool version.

  Wall clock times are recorded only when stamp is true.
  """

  def __init__(self, subcommand, config, seed, inputs = (), stamp = False) :
    self.subcommand = subcommand
    self.config = dict(config)
    self.seed = seed
    self.inputs = dict([(str(p), fileDigest(p)) for p in inputs])
    self.stamp = stamp
    self.started = time.time()
    self.elapsed = None

  def finish(self) :
    self.elapsed = time.time() - self.started

  def asDict(self) :
    d = {"subcommand" : self.subcommand, "config" : self.config,
         "seed" : self.seed, "inputs" : self.inputs, "version" : __version__}
    if self.stamp :
      d["started"] = time.strftime("%Y-%m-%dT%H:%M:%S",
                                   time.localtime(self.started))
      d["wallClock"] = self.elapsed
    return d

def _plain(x) :
  if isinstance(x, dict) :
    return dict([(str(k), _plain(v)) for k,v in x.items()])
  if isinstance(x, (list, tuple)) :
    return [_plain(v) for v in x]
  if isinstance(x, numpy.ndarray) :
    return _plain(x.tolist())
  if isinstance(x, (numpy.bool_, bool)) :
    return bool(x)
  if isinstance(x, (numpy.integer, int)) :
    return int(x)
  if isinstance(x, (numpy.floating, float)) :
    x = float(x)
    # NaN and infinity are not JSON
    return x if math.isfinite(x) else None
  return x

def toJson(report, manifest = None) :
  """ JSON text of a report dictionary, with the manifest embedded."""

  d = dict(report)
  if manifest is not None :
    d["manifest"] = manifest.asDict()
  return json.dumps(_plain(d), sort_keys = True, indent = 2) + "\n"

def writeJson(report, manifest = None, path = None) :
  """ Write a report to path, or to stdout when path is None or '-'."""

  text = toJson(report, manifest)
  if path in (None, '-') :
    sys.stdout.write(text)
  else :
    with open(path, "w") as f :
      f.write(text)
    _log.info("report written to %s", path)

def writeCsv(path, header, rows, comment = None) :
  """ Plot data as CSV. The first line is a '#' comment naming the columns
  (and what they are, if comment is given)."""

  with open(path, "w", newline = '') as f :
    f.write("# " + (comment or ",".join(header)) + "\n")
    w = csv.writer(f, lineterminator = "\n")
    w.writerow(header)
    for r in rows :
      w.writerow(["" if v is None else
                  ("%.10g" % v if isinstance(v, float) else v) for v in r])
  _log.info("plot data written to %s", path)
