## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
=========================
Synthetic Measure Studies
=========================

Behaviour of the separability measures on generated data:

  ``shapes``      the six shapes blobs, moons, circles, xor, spirals, random
  ``overlap``     two blobs with SD 1..9 (increasing class overlap)
  ``preprocess``  the overlap series after each feature preprocessing
  ``boundary``    sinusoidal class boundary of frequency 1..4

Every row carries the measure values and a baseline accuracy: a linear SVM
and a 5-NN classifier trained on the data set and scored on a copy drawn with
an independent seed.
"""

from __future__ import division

import logging

import numpy
from scipy import stats

from .separability import MeasureConfig, measureAll, ALL_MEASURES
from .generators import GeneratorSpec, generate, derivedSeed
from .preprocess import METHODS, preprocess
from .classifiers import ClassifierSpec, train, predict

__all__ = ["SHAPE_ORDER", "SERIES_CONFIG", "StudyResult", "baselineAccuracy",
           "shapeComparison", "blobOverlapStudy", "preprocessingStudy",
           "boundaryStudy"]

_log = logging.getLogger(__name__)

# expected order, most to least separable
SHAPE_ORDER = ("blobs", "moons", "circles", "xor", "spirals", "random")

BASELINES = (ClassifierSpec("linearsvm"), ClassifierSpec("knn", kNeighbors = 5))

# Density of the SD series is taken on unscaled features: min-max scaling
# every data set to [0,1] undoes the spread that the series varies.
SERIES_CONFIG = MeasureConfig(densityNormalize = False)

class StudyResult(object) :
  """ Rows (one dict per data set) and a summary of one study."""

  def __init__(self, name, keys, rows, summary, params) :
    self.name = name
    self.keys = keys
    self.rows = rows
    self.summary = summary
    self.params = params

  def asDict(self) :
    return {"study" : self.name, "params" : self.params, "rows" : self.rows,
            "summary" : self.summary}

  def header(self) :
    return ["seed"] + list(self.keys) + list(ALL_MEASURES) + \
           ["acc." + s.kind for s in BASELINES]

  def table(self) :
    """ Plot data rows, in header order."""
    for r in self.rows :
      acc = r["accuracy"] or {}
      yield [r["seed"]] + [r[k] for k in self.keys] + \
            [r["values"].get(m) for m in ALL_MEASURES] + \
            [acc.get(s.kind) for s in BASELINES]

def _testSeed(seed) :
  return int(derivedSeed(seed, 1).generate_state(1)[0])

def baselineAccuracy(spec) :
  """ Accuracy of the baseline classifiers trained on the data set of spec
  and tested on a copy with another seed."""

  data = generate(spec)
  test = generate(GeneratorSpec(spec.shape, spec.samplesPerClass, spec.noise,
                                spec.level, _testSeed(spec.seed)))
  return dict([(s.kind, predict(train(s, data), test)[1]) for s in BASELINES])

def _row(seed, keyName, key, lm, config, accuracy) :
  report = measureAll(lm, config, datasetId = "%s=%s,seed=%d" % (keyName, key, seed))
  for m, e in report.errors.items() :
    _log.warning("%s: %s", report.datasetId, e)
  values = dict([(m, float(v)) for m,v in report.values.items()])
  return {"seed" : seed, keyName : key, "values" : values, "accuracy" : accuracy}

def _series(rows, seed, measure) :
  return [r["values"].get(measure) for r in rows if r["seed"] == seed]

def shapeComparison(samplesPerClass = 1000, seeds = range(10), config = None) :
  """ Measures on the six shapes, for every seed.

  summary["orderingHolds"][seed] tells whether rs increases strictly along
  SHAPE_ORDER.
  """

  config = config or MeasureConfig()
  rows = []
  holds = dict()
  for seed in seeds :
    for shape in SHAPE_ORDER :
      spec = GeneratorSpec(shape, samplesPerClass, seed = seed)
      rows.append(_row(seed, "shape", shape, generate(spec), config,
                       baselineAccuracy(spec)))
    rs = _series(rows, seed, "rs")
    holds[str(seed)] = None not in rs and all(a < b for a,b in zip(rs, rs[1:]))
    _log.info("seed %d: rs %s", seed, " ".join(["%.3f" % v for v in rs if v is not None]))

  summary = {"orderingHolds" : holds,
             "fraction" : sum(holds.values()) / max(1, len(holds))}
  return StudyResult("shapes", ("shape",), rows, summary,
                     {"samplesPerClass" : samplesPerClass, "seeds" : list(seeds),
                      "config" : config.asDict()})

def blobOverlapStudy(sds = range(1, 10), samplesPerClass = 500, seeds = range(10),
                     config = None) :
  """ Measures on blobs of increasing SD.

  summary["spearman"][seed][measure] is the rank correlation of the measure
  with SD; summary["plateau"][seed][measure] the range of the measure over
  SD >= 3 (a measure that stops responding to overlap has a small range).
  """

  config = config or SERIES_CONFIG
  sds = [float(s) for s in sds]
  rows = []
  rho, plateau = dict(), dict()
  for seed in seeds :
    for sd in sds :
      spec = GeneratorSpec("blobs", samplesPerClass, noise = sd, seed = seed)
      rows.append(_row(seed, "sd", sd, generate(spec), config,
                       baselineAccuracy(spec)))
    rho[str(seed)], plateau[str(seed)] = dict(), dict()
    for m in config.measures :
      v = _series(rows, seed, m)
      if None in v :
        continue
      rho[str(seed)][m] = float(stats.spearmanr(sds, v)[0]) \
                          if numpy.ptp(v) > 0 else None
      tail = [x for s,x in zip(sds, v) if s >= 3]
      plateau[str(seed)][m] = float(numpy.ptp(tail)) if tail else None

  return StudyResult("overlap", ("sd",), rows, {"spearman" : rho, "plateau" : plateau},
                     {"sds" : sds, "samplesPerClass" : samplesPerClass,
                      "seeds" : list(seeds), "config" : config.asDict()})

def preprocessingStudy(sds = range(1, 10), methods = METHODS, seed = 0,
                       samplesPerClass = 500, config = None) :
  """ Measures on the blob overlap series, raw and after each preprocessing.

  Per method the summary has the variance of every measure across SD and the
  Kendall tau of its rs ordering over SD against the raw rs ordering.
  summary["ranking"] lists methods by decreasing rs variance.
  """

  config = config or SERIES_CONFIG
  sds = [float(s) for s in sds]
  raw = [generate(GeneratorSpec("blobs", samplesPerClass, noise = sd, seed = seed))
         for sd in sds]

  rows = []
  for method in ("raw",) + tuple(methods) :
    for sd, lm in zip(sds, raw) :
      x = lm if method == "raw" else preprocess(lm, method)
      r = _row(seed, "method", method, x, config, None)
      r["sd"] = sd
      rows.append(r)

  def series(method, m) :
    return [r["values"].get(m) for r in rows if r["method"] == method]

  variance, tau = dict(), dict()
  rawRs = series("raw", "rs")
  for method in ("raw",) + tuple(methods) :
    variance[method] = dict([(m, float(numpy.var(series(method, m))))
                             for m in config.measures if None not in series(method, m)])
    rs = series(method, "rs")
    if None not in rs and None not in rawRs :
      tau[method] = float(stats.kendalltau(rs, rawRs)[0])

  ranking = sorted(variance, key = lambda k : -variance[k].get("rs", 0.0))
  return StudyResult("preprocess", ("method", "sd"), rows,
                     {"variance" : variance, "kendallTau" : tau, "ranking" : ranking},
                     {"sds" : sds, "methods" : list(methods), "seed" : seed,
                      "samplesPerClass" : samplesPerClass,
                      "config" : config.asDict()})

def boundaryStudy(levels = range(1, 5), samplesPerClass = 1000, seed = 0,
                  config = None) :
  """ Measures on the sinusoidal boundary data sets of increasing frequency."""

  config = config or MeasureConfig()
  rows = []
  for level in levels :
    spec = GeneratorSpec("boundary", samplesPerClass, level = level, seed = seed)
    rows.append(_row(seed, "level", int(level), generate(spec), config,
                     baselineAccuracy(spec)))
  return StudyResult("boundary", ("level",), rows, {},
                     {"levels" : [int(l) for l in levels],
                      "samplesPerClass" : samplesPerClass, "seed" : seed,
                      "config" : config.asDict()})
