## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
==========
SNR Sweeps
==========

Accuracy and separability of noisy test sets, level by level.

Every classifier is trained once on the clean data. For every SNR level and
trial the noisy copy is classified by every model and its rs is computed.
Means and SDs are taken over trials.

Cells (level, trial) are independent and may be evaluated by a thread pool
(SEPY_THREADS); the noisy copy of a cell depends only on the task set seed and
the cell index, so results do not depend on the number of threads.
"""

from __future__ import division

import logging

import numpy

from .errors import ZeroVariance, InvalidRange
from .codingRate import CodingConfig
from .separability import rsMeasure
from .classifiers import train as trainClassifier, predict
from .genericutils import orderedMap

__all__ = ["SweepResult", "snrSweep", "pearson"]

_log = logging.getLogger(__name__)

def pearson(x, y) :
  """ Sample Pearson correlation coefficient.

  >>> round(pearson([1, 2, 3, 4], [3, 5, 7, 9]), 12)
  1.0
  """

  x = numpy.asarray(x, dtype = float)
  y = numpy.asarray(y, dtype = float)
  if len(x) != len(y) or len(x) < 3 :
    raise InvalidRange("need two vectors of equal length >= 3 (got %d,%d)" %
                       (len(x), len(y)))
  if numpy.ptp(x) == 0 or numpy.ptp(y) == 0 :
    raise ZeroVariance("constant vector, correlation undefined")
  r = numpy.corrcoef(x, y)[0, 1]
  return float(min(1.0, max(-1.0, r)))

class SweepResult(object) :
  """ Outcome of an SNR sweep.

  accuracies has shape (levels, classifiers, trials), rs (levels, trials).
  """

  def __init__(self, levels, specs, accuracies, rs, coding) :
    self.levels = [float(s) for s in levels]
    self.specs = list(specs)
    self.accuracies = numpy.asarray(accuracies, dtype = float)
    self.rs = numpy.asarray(rs, dtype = float)
    self.coding = coding
    assert self.accuracies.shape[:2] == (len(self.levels), len(self.specs))
    assert self.rs.shape == (len(self.levels), self.accuracies.shape[2])

  @property
  def trials(self) :
    return self.rs.shape[1]

  @property
  def names(self) :
    return [s.name for s in self.specs]

  @property
  def accuracyMean(self) :
    return self.accuracies.mean(axis = 2)

  @property
  def accuracyStd(self) :
    return self.accuracies.std(axis = 2)

  @property
  def rsMean(self) :
    return self.rs.mean(axis = 1)

  @property
  def rsStd(self) :
    return self.rs.std(axis = 1)

  def correlations(self) :
    """ Per classifier, Pearson of mean accuracy against 1 - mean rs (None
    when undefined)."""

    c = dict()
    for j, name in enumerate(self.names) :
      try :
        c[name] = pearson(self.accuracyMean[:, j], 1 - self.rsMean)
      except (ZeroVariance, InvalidRange) as e :
        _log.warning("%s: no correlation (%s)", name, e)
        c[name] = None
    return c

  def asDict(self) :
    am, sd = self.accuracyMean, self.accuracyStd
    return {
      "levels" : self.levels,
      "trials" : self.trials,
      "coding" : self.coding.asDict(),
      "classifiers" : [s.asDict() for s in self.specs],
      "accuracy" : dict([(name, {"mean" : [float(v) for v in am[:, j]],
                                 "std" : [float(v) for v in sd[:, j]]})
                         for j, name in enumerate(self.names)]),
      "rs" : {"mean" : [float(v) for v in self.rsMean],
              "std" : [float(v) for v in self.rsStd]},
      "pearson" : self.correlations(),
    }

def snrSweep(train, taskset, specs, config = None, nThreads = None) :
  """ Run an SNR sweep.

  :param train: clean training data (the task set is built from it)
  :param taskset: noisy test sets
  :type taskset: SnrTaskSet
  :param specs: classifier specs
  :param config: coding configuration for rs
  :param nThreads: worker count (default from SEPY_THREADS)
  :rtype: SweepResult
  """

  if config is None :
    config = CodingConfig()
  if not specs :
    raise InvalidRange("no classifiers to sweep")

  models = [trainClassifier(s, train) for s in specs]

  def cell(it) :
    i, t = it
    test = taskset.test(i, t)
    accs = [predict(m, test)[1] for m in models]
    return accs, rsMeasure(test, config)

  n, T = len(taskset.levels), taskset.trials
  cells = [(i, t) for i in range(n) for t in range(T)]
  _log.info("sweep: %d classifiers, %d levels x %d trials", len(specs), n, T)
  out = orderedMap(cell, cells, nThreads)

  accuracies = numpy.empty((n, len(specs), T))
  rs = numpy.empty((n, T))
  for (i, t), (accs, r) in zip(cells, out) :
    accuracies[i, :, t] = accs
    rs[i, t] = r
  for i, s in enumerate(taskset.levels) :
    _log.info("%6.2f dB  rs %.4f  acc %s", s, rs[i].mean(),
              " ".join(["%.3f" % a for a in accuracies[i].mean(axis = 1)]))

  return SweepResult(taskset.levels, specs, accuracies, rs, config)
