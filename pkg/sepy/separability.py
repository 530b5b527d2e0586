## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
=====================
Separability Measures
=====================

Five measures of how mixed the classes of a labeled data set are. All are
transformed to [0,1], with a low value meaning the data is easy to separate.

  ``rs``
     Rate of separability: the per-class coding rate over the coding rate of
     the whole data (see :mod:`sepy.codingRate`).
  ``dsi``
     One minus the mean, over classes, of the Kolmogorov-Smirnov statistic
     between the intra-class and the inter-class distance distributions.
  ``n2``
     Ratio r of summed nearest-neighbor to summed nearest-enemy distances,
     reported as 1 - 1/(1+r).
  ``lsc``
     Local set cardinality: one minus the mean size of the local sets (points
     closer than the nearest enemy), normalized by m.
  ``density``
     One minus the edge density of the graph connecting points closer than a
     threshold (on min-max scaled features by default).

Distances are Euclidean. Ties are resolved by the lowest sample index.
"""

from __future__ import division

import logging, time

import numpy
from scipy.spatial.distance import pdist, squareform, cdist

from .errors import DataError, ZeroTotalRate, DegenerateClass, TooManySamples
from .codingRate import CodingConfig, codingRate, perClassCodingRate

__all__ = ["ALL_MEASURES", "DEFAULT_DENSITY_THRESHOLD", "MAX_CACHED_SAMPLES",
           "MeasureConfig", "MeasureReport", "DistanceCache", "ksStatistic",
           "rsMeasure", "dsiMeasure", "n2Measure", "lscMeasure",
           "densityMeasure", "minMaxScaled", "measureAll"]

_log = logging.getLogger(__name__)

ALL_MEASURES = ("rs", "dsi", "n2", "lsc", "density")

DEFAULT_DENSITY_THRESHOLD = 0.15

# largest sample count for which the full m x m distance matrix is stored
MAX_CACHED_SAMPLES = 20000

_BLOCK_ROWS = 256

class MeasureConfig(object) :
  """ Which measures to compute, and their parameters."""

  def __init__(self, coding = None, measures = ALL_MEASURES,
               densityThreshold = DEFAULT_DENSITY_THRESHOLD,
               densityNormalize = True, n2SameClass = True,
               streaming = False, maxSamples = MAX_CACHED_SAMPLES,
               rsPreprocess = None) :
    """
    :param coding: coding rate configuration for rs (default CodingConfig())
    :param measures: subset of ALL_MEASURES, in any order
    :param densityThreshold: edge threshold of the density graph
    :param densityNormalize: min-max scale features before building the graph
    :param n2SameClass: nearest neighbor in n2 restricted to the same class
      (False: nearest point of any class)
    :param streaming: recompute distance rows instead of storing the matrix
    :param maxSamples: refuse to store a distance matrix for more samples
    :param rsPreprocess: name of a preprocessing method applied before rs
      (see :mod:`sepy.preprocess`), or None
    """

    unknown = [x for x in measures if x not in ALL_MEASURES]
    if unknown :
      raise ValueError("unknown measure(s): " + ",".join(unknown))
    if not densityThreshold > 0 :
      raise ValueError("density threshold must be positive")

    self.coding = coding if coding is not None else CodingConfig()
    self.measures = tuple(x for x in ALL_MEASURES if x in measures)
    self.densityThreshold = float(densityThreshold)
    self.densityNormalize = bool(densityNormalize)
    self.n2SameClass = bool(n2SameClass)
    self.streaming = bool(streaming)
    self.maxSamples = int(maxSamples)
    self.rsPreprocess = rsPreprocess

  def asDict(self) :
    d = self.coding.asDict()
    d.update({"measures" : list(self.measures),
              "densityThreshold" : self.densityThreshold,
              "densityNormalize" : self.densityNormalize,
              "n2SameClass" : self.n2SameClass,
              "streaming" : self.streaming,
              "maxSamples" : self.maxSamples,
              "rsPreprocess" : self.rsPreprocess})
    return d

class MeasureReport(object) :
  """ Measure values of one data set, failures, and the configuration used."""

  def __init__(self, datasetId, values, errors, config, timestamp = None) :
    for name, v in values.items() :
      assert 0.0 <= v <= 1.0, (name, v)
    self.datasetId = datasetId
    self.values = dict(values)
    self.errors = dict(errors)
    self.config = dict(config)
    self.timestamp = timestamp

  def __repr__(self) :
    v = ",".join(["%s=%.4f" % (n, self.values[n]) for n in ALL_MEASURES
                  if n in self.values])
    return "MeasureReport(%s:%s)" % (self.datasetId, v)

  def get(self, name) :
    return self.values.get(name)

  rs = property(lambda self : self.values.get("rs"))
  dsi = property(lambda self : self.values.get("dsi"))
  n2 = property(lambda self : self.values.get("n2"))
  lsc = property(lambda self : self.values.get("lsc"))
  density = property(lambda self : self.values.get("density"))

  def asDict(self) :
    return {"dataset" : self.datasetId,
            "values" : dict((n, float(v)) for n,v in self.values.items()),
            "errors" : dict(self.errors),
            "config" : dict(self.config),
            "timestamp" : self.timestamp}

class DistanceCache(object) :
  """ Pairwise Euclidean distances of the samples of a labeled matrix, with
  the nearest neighbor and nearest enemy of each sample.

  In streaming mode rows are recomputed on demand instead of being stored.
  Nearest same-class neighbor of a sample without one is -1 (distance inf).
  """

  def __init__(self, lm, streaming = False, maxSamples = MAX_CACHED_SAMPLES,
               neighbors = True) :
    m = lm.nSamples
    if m > maxSamples and not streaming :
      raise TooManySamples("%d samples exceeds the distance matrix limit of %d"
                           " (use streaming)" % (m, maxSamples))

    self.points = numpy.ascontiguousarray(lm.samples())
    self.labels = lm.labels
    self.streaming = streaming
    self.nSamples = m

    if not streaming :
      self._matrix = squareform(pdist(self.points))
      self._matrix.flags.writeable = False
    else :
      self._matrix = None

    if neighbors :
      self._neighbors()

  def block(self, rows, cols = None) :
    """ Distance sub-matrix rows x cols (all columns by default)."""
    if self._matrix is not None :
      if cols is None :
        return self._matrix[rows]
      return self._matrix[numpy.ix_(rows, cols)]
    pc = self.points if cols is None else self.points[cols]
    return cdist(self.points[rows], pc)

  def row(self, i) :
    return self.block([i])[0]

  def rowBlocks(self, size = _BLOCK_ROWS) :
    """ Iterate over (first row index, block of consecutive full rows)."""
    for s in range(0, self.nSamples, size) :
      yield s, self.block(numpy.arange(s, min(s + size, self.nSamples)))

  def _neighbors(self) :
    m = self.nSamples
    labels = self.labels
    self.nn = numpy.full(m, -1, dtype = int)
    self.nnAny = numpy.full(m, -1, dtype = int)
    self.ne = numpy.full(m, -1, dtype = int)
    self.dnn = numpy.full(m, numpy.inf)
    self.dnnAny = numpy.full(m, numpy.inf)
    self.dne = numpy.full(m, numpy.inf)

    for s, blk in self.rowBlocks() :
      for r in range(blk.shape[0]) :
        i = s + r
        row = blk[r].copy()
        row[i] = numpy.inf

        j = numpy.argmin(row)
        if numpy.isfinite(row[j]) :
          self.nnAny[i], self.dnnAny[i] = j, row[j]

        same = labels == labels[i]
        rs = numpy.where(same, row, numpy.inf)
        j = numpy.argmin(rs)
        if numpy.isfinite(rs[j]) :
          self.nn[i], self.dnn[i] = j, rs[j]

        re = numpy.where(same, numpy.inf, row)
        j = numpy.argmin(re)
        if numpy.isfinite(re[j]) :
          self.ne[i], self.dne[i] = j, re[j]

def ksStatistic(a, b) :
  """ Two-sample Kolmogorov-Smirnov statistic: the largest absolute difference
  between the empirical distribution functions of samples a and b.

  Exact; both CDFs are evaluated at every observed value.

  >>> ksStatistic([1, 2, 3], [1, 2, 3])
  0.0
  >>> ksStatistic([1, 2], [3, 4])
  1.0
  """

  a = numpy.sort(numpy.asarray(a, dtype = float))
  b = numpy.sort(numpy.asarray(b, dtype = float))
  assert len(a) and len(b)
  allv = numpy.concatenate([a, b])
  fa = numpy.searchsorted(a, allv, side = 'right') / len(a)
  fb = numpy.searchsorted(b, allv, side = 'right') / len(b)
  return float(numpy.max(numpy.abs(fa - fb)))

def _needTwoClasses(lm, what) :
  if lm.k < 2 :
    raise DegenerateClass("%s needs at least two classes" % what)

def rsMeasure(lm, config = None) :
  """ Rate of separability, in (0,1].

  :param lm: labeled matrix
  :param config: coding configuration (default CodingConfig())
  """

  if config is None :
    config = CodingConfig()
  total = codingRate(lm.data, config)
  if total <= 0 :
    raise ZeroTotalRate("total coding rate is zero, rs is undefined")
  return min(1.0, perClassCodingRate(lm, config) / total)

def dsiMeasure(lm, cache = None) :
  """ Distance-based separability index, transformed so that low values mean
  separable data.

  :param lm: labeled matrix, every class with at least two samples
  :param cache: distances of lm (built if not given)
  """

  _needTwoClasses(lm, "dsi")
  small = [j for j in range(lm.k) if lm.counts[j] < 2]
  if small :
    raise DegenerateClass("class %d has fewer than two samples" % small[0])
  if cache is None :
    cache = DistanceCache(lm)

  ks = []
  for j in range(lm.k) :
    inj = lm.classIndices(j)
    outj = numpy.flatnonzero(lm.labels != j)
    intra = cache.block(inj, inj)
    intra = intra[numpy.triu_indices(len(inj), 1)]
    inter = cache.block(inj, outj).ravel()
    ks.append(ksStatistic(intra, inter))

  return float(1.0 - numpy.mean(ks))

def n2Measure(lm, cache = None, sameClass = True) :
  """ Nearest neighbor to nearest enemy distance ratio r, as 1 - 1/(1+r).

  When every nearest enemy is at distance 0 the ratio is infinite and the
  value 1 is returned.

  :param lm: labeled matrix
  :param cache: distances of lm (built if not given)
  :param sameClass: use the nearest same-class neighbor (default), otherwise
    the nearest point of any class.
  """

  _needTwoClasses(lm, "n2")
  if sameClass :
    single = [j for j in range(lm.k) if lm.counts[j] < 2]
    if single :
      raise DegenerateClass("class %d has a single sample, no same class"
                            " neighbor" % single[0])
  if cache is None :
    cache = DistanceCache(lm)

  num = numpy.sum(cache.dnn if sameClass else cache.dnnAny)
  den = numpy.sum(cache.dne)
  if den == 0 :
    return 1.0
  raw = num / den
  return float(1.0 - 1.0 / (1.0 + raw))

def lscMeasure(lm, cache = None) :
  """ Local set cardinality measure.

  The local set of x_i holds the points x_j (j != i) strictly closer to x_i
  than its nearest enemy.

  :param lm: labeled matrix
  :param cache: distances of lm (built if not given)
  """

  _needTwoClasses(lm, "lsc")
  if cache is None :
    cache = DistanceCache(lm)

  m = lm.nSamples
  total = 0
  for s, blk in cache.rowBlocks() :
    ne = cache.dne[s:s + blk.shape[0]]
    # self is at distance 0, counted whenever the enemy is not coincident
    total += int(numpy.sum(blk < ne[:, numpy.newaxis])) - int(numpy.sum(ne > 0))
  return float(1.0 - total / m**2)

def minMaxScaled(lm) :
  """ Features scaled to [0,1]. Constant features map to 0."""
  x = lm.data
  lo = x.min(axis = 1)[:, numpy.newaxis]
  span = x.max(axis = 1)[:, numpy.newaxis] - lo
  span[span == 0] = 1.0
  return lm.withData((x - lo) / span)

def densityMeasure(lm, threshold = DEFAULT_DENSITY_THRESHOLD, normalize = True,
                   cache = None, streaming = False, maxSamples = MAX_CACHED_SAMPLES) :
  """ One minus the edge density of the threshold graph.

  Nodes x_i, x_j are connected when d(x_i,x_j) < threshold.

  :param lm: labeled matrix
  :param threshold: positive distance threshold
  :param normalize: min-max scale every feature to [0,1] first
  :param cache: distances of lm; only used when normalize is False
  :param streaming: see DistanceCache
  :param maxSamples: see DistanceCache
  """

  if not threshold > 0 :
    raise DataError("density threshold must be positive (got %g)" % threshold)
  if normalize :
    cache = DistanceCache(minMaxScaled(lm), streaming, maxSamples, neighbors = False)
  elif cache is None :
    cache = DistanceCache(lm, streaming, maxSamples, neighbors = False)

  m = lm.nSamples
  edges = 0
  for s, blk in cache.rowBlocks() :
    rows = numpy.arange(s, s + blk.shape[0])[:, numpy.newaxis]
    upper = numpy.arange(m)[numpy.newaxis, :] > rows
    edges += int(numpy.sum((blk < threshold) & upper))
  return float(1.0 - 2.0 * edges / (m * (m - 1)))

def measureAll(lm, config = None, datasetId = "", timestamp = None) :
  """ Compute the measures selected in config.

  A measure which fails on this data set is recorded in the report errors,
  the others are still computed.

  :param lm: labeled matrix
  :param config: measure configuration (default MeasureConfig())
  :type config: MeasureConfig
  :returns: MeasureReport
  """

  if config is None :
    config = MeasureConfig()

  values, errors = dict(), dict()
  cache = [None]

  def getCache() :
    if cache[0] is None :
      cache[0] = DistanceCache(lm, streaming = config.streaming,
                               maxSamples = config.maxSamples)
    return cache[0]

  def rs() :
    x = lm
    if config.rsPreprocess :
      from .preprocess import preprocess
      x = preprocess(lm, config.rsPreprocess)
    return rsMeasure(x, config.coding)

  compute = {
    "rs" : rs,
    "dsi" : lambda : dsiMeasure(lm, getCache()),
    "n2" : lambda : n2Measure(lm, getCache(), config.n2SameClass),
    "lsc" : lambda : lscMeasure(lm, getCache()),
    "density" : lambda : densityMeasure(lm, config.densityThreshold,
                                        config.densityNormalize,
                                        None if config.densityNormalize else getCache(),
                                        config.streaming, config.maxSamples)
    }

  for name in config.measures :
    tStart = time.time()
    try :
      values[name] = compute[name]()
    except DataError as e :
      errors[name] = "%s: %s" % (e.__class__.__name__, e)
      _log.info("%s failed on %s: %s", name, datasetId or lm, errors[name])
      continue
    _log.debug("%s = %.6f (%.2fs)", name, values[name], time.time() - tStart)

  return MeasureReport(datasetId, values, errors, config.asDict(), timestamp)
