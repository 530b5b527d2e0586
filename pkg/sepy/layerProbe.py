## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
=====================
Layer Feature Probes
=====================

Separability (rs) of the features a network produces at every layer and
epoch, read from a feature dump exported by the training code.

Binary dump format (little endian)::

  "FSEP"                       magic, 4 bytes
  u32 version                  1
  u32 count                    number of layer records
  count records:
    u16 length, UTF-8 name     layer name
    u32 epoch
    u8 rank                    2 (n x d) or 4 (n x c x h x w)
    u32 dims[rank]
    f32 data                   row major (channel, then row, then column)
  u32 n, u32 labels[n]         class of every sample
  u32 length, UTF-8 text       optional provenance, "key=value;key=value"

Records of one epoch share the sample count n; epochs are non-decreasing in
file order. Recognized provenance keys are ``split`` (train/test), ``seed``
and ``acc@<epoch>`` (accuracy of the network at that epoch, reported as is).

Small dumps may instead be a directory of delimited files
``<layer>@<epoch>.csv`` (one sample per row), plus ``labels.csv`` and an
optional ``meta.txt`` holding the provenance string.
"""

from __future__ import division

import os, os.path, re, struct, glob, logging

import numpy

from .errors import BadMagic, VersionMismatch, ShapeMismatch, LabelCountMismatch
from .labeledMatrix import LabeledMatrix
from .codingRate import CodingConfig, avgPool2x2
from .separability import rsMeasure
from .genericutils import orderedMap

__all__ = ["MAGIC", "VERSION", "FeatureDump", "loadDump", "saveDump",
           "ProbeReport", "probe", "parseProvenance", "DEFAULT_MAX_ELEMENTS"]

_log = logging.getLogger(__name__)

MAGIC = b"FSEP"
VERSION = 1

# n x d above this is subsampled before computing rs
DEFAULT_MAX_ELEMENTS = 20000000

def _naturalKey(name) :
  return [int(x) if x.isdigit() else x for x in re.split(r"(\d+)", name)]

def parseProvenance(text) :
  """ Dictionary of a "key=value;key=value" provenance string.

  >>> sorted(parseProvenance("split=test; seed=3;acc@2=0.9").items())
  [('acc@2', '0.9'), ('seed', '3'), ('split', 'test')]
  """

  meta = dict()
  for part in (text or "").split(';') :
    if '=' in part :
      k, v = part.split('=', 1)
      meta[k.strip()] = v.strip()
  return meta

class FeatureDump(object) :
  """ Per layer features of the same samples at one or more epochs.

  records is a list of (layer name, epoch, array) with arrays of shape n x d
  or n x c x h x w; labels has n class ids.
  """

  def __init__(self, records, labels, provenance = "") :
    self.records = [(str(name), int(e), numpy.asarray(t)) for name,e,t in records]
    self.labels = numpy.asarray(labels, dtype = int)
    self.provenance = provenance or ""

    n = len(self.labels)
    prev = None
    for name, e, t in self.records :
      if t.ndim not in (2, 4) :
        raise ShapeMismatch("%s@%d: rank %d tensor (2 or 4 expected)" % (name, e, t.ndim))
      if t.shape[0] != n :
        raise LabelCountMismatch("%s@%d has %d samples, %d labels" %
                                 (name, e, t.shape[0], n))
      if prev is not None and e < prev :
        raise ShapeMismatch("%s: epoch %d after epoch %d" % (name, e, prev))
      prev = e

  def __len__(self) :
    return len(self.records)

  @property
  def meta(self) :
    return parseProvenance(self.provenance)

  @property
  def layers(self) :
    return sorted(set([r[0] for r in self.records]), key = _naturalKey)

  @property
  def epochs(self) :
    return sorted(set([r[1] for r in self.records]))

class _Reader(object) :
  def __init__(self, buf) :
    self.buf = buf
    self.pos = 0

  def take(self, nbytes, what) :
    if self.pos + nbytes > len(self.buf) :
      raise ShapeMismatch("truncated dump, %d bytes of %s expected, %d left" %
                          (nbytes, what, len(self.buf) - self.pos), self.pos)
    b = self.buf[self.pos:self.pos + nbytes]
    self.pos += nbytes
    return b

  def unpack(self, fmt, what) :
    v = struct.unpack(fmt, self.take(struct.calcsize(fmt), what))
    return v if len(v) > 1 else v[0]

  def remaining(self) :
    return len(self.buf) - self.pos

def _loadBinary(path) :
  with open(path, "rb") as f :
    r = _Reader(f.read())

  if r.remaining() < 4 or r.take(4, "magic") != MAGIC :
    raise BadMagic("%s: not a feature dump" % path)
  version = r.unpack("<I", "version")
  if version != VERSION :
    raise VersionMismatch("%s: dump version %d, only %d supported" %
                          (path, version, VERSION))

  count = r.unpack("<I", "record count")
  records = []
  for _ in range(count) :
    start = r.pos
    name = r.take(r.unpack("<H", "name length"), "layer name").decode("utf-8")
    epoch = r.unpack("<I", "epoch")
    rank = r.unpack("<B", "rank")
    if rank not in (2, 4) :
      raise ShapeMismatch("%s: rank %d (2 or 4 expected)" % (name, rank), start)
    dims = r.unpack("<%dI" % rank, "dimensions")
    size = int(numpy.prod(dims))
    data = numpy.frombuffer(r.take(4 * size, "%s@%d data" % (name, epoch)),
                            dtype = "<f4")
    records.append((name, epoch, data.reshape(dims).astype(float)))

  n = r.unpack("<I", "label count")
  labels = numpy.frombuffer(r.take(4 * n, "labels"), dtype = "<u4").astype(int)

  provenance = ""
  if r.remaining() >= 4 :
    provenance = r.take(r.unpack("<I", "provenance length"),
                        "provenance").decode("utf-8")
  return FeatureDump(records, labels, provenance)

def _loadText(path) :
  labels = numpy.loadtxt(os.path.join(path, "labels.csv"), delimiter = ',',
                         dtype = int, ndmin = 1).ravel()
  records = []
  for fname in glob.glob(os.path.join(path, "*@*.csv")) :
    name, epoch = os.path.basename(fname)[:-4].rsplit('@', 1)
    x = numpy.loadtxt(fname, delimiter = ',', ndmin = 2)
    records.append((name, int(epoch), x))
  records.sort(key = lambda r : (r[1], _naturalKey(r[0])))

  provenance = ""
  mfile = os.path.join(path, "meta.txt")
  if os.path.exists(mfile) :
    with open(mfile) as f :
      provenance = f.read().strip()
  return FeatureDump(records, labels, provenance)

def loadDump(path) :
  """ Read a feature dump (binary file or directory of delimited files).

  :rtype: FeatureDump
  """

  dump = _loadText(path) if os.path.isdir(path) else _loadBinary(path)
  _log.info("%s: %d records, %d layers, %d epochs, %d samples", path,
            len(dump), len(dump.layers), len(dump.epochs), len(dump.labels))
  return dump

def saveDump(dump, path) :
  """ Write a feature dump in the binary format."""

  with open(path, "wb") as f :
    f.write(MAGIC)
    f.write(struct.pack("<II", VERSION, len(dump.records)))
    for name, epoch, t in dump.records :
      b = name.encode("utf-8")
      f.write(struct.pack("<H", len(b)) + b)
      f.write(struct.pack("<IB", epoch, t.ndim))
      f.write(struct.pack("<%dI" % t.ndim, *t.shape))
      f.write(numpy.ascontiguousarray(t, dtype = "<f4").tobytes())
    f.write(struct.pack("<I", len(dump.labels)))
    f.write(numpy.asarray(dump.labels, dtype = "<u4").tobytes())
    if dump.provenance :
      b = dump.provenance.encode("utf-8")
      f.write(struct.pack("<I", len(b)) + b)

class ProbeReport(object) :
  """ rs of every (layer, epoch) of a dump.

  deltaRs[layer] is the range (max - min) of the layer's rs over epochs.
  finalOrdering lists the layers by increasing rs at the last epoch (most
  separable first).
  """

  def __init__(self, rs, layers, epochs, pooled, subsampled, meta, coding) :
    self.rs = rs
    self.layers = layers
    self.epochs = epochs
    self.pooled = pooled
    self.subsampled = subsampled
    self.meta = meta
    self.coding = coding

  def layerRs(self, layer) :
    """ [(epoch, rs)] of one layer."""
    return sorted([(e, v) for (l, e), v in self.rs.items() if l == layer])

  @property
  def deltaRs(self) :
    d = dict()
    for layer in self.layers :
      v = [x for e,x in self.layerRs(layer)]
      d[layer] = max(v) - min(v)
    return d

  @property
  def finalRs(self) :
    last = dict()
    for layer in self.layers :
      last[layer] = self.layerRs(layer)[-1][1]
    return last

  @property
  def finalOrdering(self) :
    f = self.finalRs
    return sorted(self.layers, key = lambda l : (f[l], _naturalKey(l)))

  @property
  def accuracy(self) :
    """ Network accuracy per epoch, from the dump provenance."""
    acc = dict()
    for k, v in self.meta.items() :
      if k.startswith("acc@") :
        try :
          acc[int(k[4:])] = float(v)
        except ValueError :
          _log.warning("bad provenance entry %s=%s", k, v)
    return acc

  def asDict(self) :
    return {
      "layers" : self.layers,
      "epochs" : self.epochs,
      "rs" : dict([(l, [[e, float(v)] for e,v in self.layerRs(l)])
                   for l in self.layers]),
      "deltaRs" : dict([(l, float(v)) for l,v in self.deltaRs.items()]),
      "finalOrdering" : self.finalOrdering,
      "pooled" : self.pooled,
      "subsampled" : self.subsampled,
      "split" : self.meta.get("split"),
      "seed" : self.meta.get("seed"),
      "accuracy" : dict([(str(e), a) for e,a in sorted(self.accuracy.items())]),
      "coding" : self.coding.asDict(),
    }

  def rows(self) :
    """ (layer, epoch, rs, deltaRs of the layer), layers in depth order."""
    delta = self.deltaRs
    for layer in self.layers :
      for e, v in self.layerRs(layer) :
        yield [layer, e, float(v), float(delta[layer])]

def _subsample(labels, keep, rng) :
  """ Stratified choice of about keep sample indices, every class kept."""

  frac = keep / len(labels)
  chosen = []
  for j in numpy.unique(labels) :
    idx = numpy.flatnonzero(labels == j)
    take = max(2, int(numpy.ceil(frac * len(idx))))
    chosen.append(rng.choice(idx, min(take, len(idx)), replace = False))
  return numpy.sort(numpy.concatenate(chosen))

def probe(dump, config = None, pool = False, maxElements = DEFAULT_MAX_ELEMENTS,
          nThreads = None) :
  """ rs of every record of a feature dump.

  :param dump: features
  :type dump: FeatureDump
  :param config: coding configuration
  :param pool: 2x2 average pooling of rank 4 tensors before flattening
  :param maxElements: subsample the samples of larger records (n x d)
  :rtype: ProbeReport
  """

  if config is None :
    config = CodingConfig()
  meta = dump.meta
  try :
    seed = int(meta.get("seed", 0))
  except ValueError :
    seed = 0

  # dense class ids
  classes, labels = numpy.unique(dump.labels, return_inverse = True)
  labels = labels.ravel()
  subsampled = []

  def one(rec) :
    name, epoch, t = rec
    if pool and t.ndim == 4 :
      t = avgPool2x2(t)
    x = t.reshape(t.shape[0], -1)
    y = labels
    n, d = x.shape
    if n * d > maxElements :
      rng = numpy.random.default_rng([seed, epoch])
      idx = _subsample(y, max(2 * len(classes), maxElements // d), rng)
      _log.warning("%s@%d: %d x %d features, rs from %d samples", name, epoch,
                   n, d, len(idx))
      subsampled.append("%s@%d" % (name, epoch))
      x, y = x[idx], y[idx]
    lm = LabeledMatrix.fromSamples(x, y, len(classes))
    v = rsMeasure(lm, config)
    _log.info("%s@%d: rs %.4f", name, epoch, v)
    return v

  values = orderedMap(one, dump.records, nThreads)
  rs = dict([((name, epoch), v) for (name, epoch, t), v in zip(dump.records, values)])
  return ProbeReport(rs, dump.layers, dump.epochs, bool(pool), sorted(subsampled),
                     meta, config)
