## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
=====================
Classifier Abilities
=====================

Map recognition accuracies to a scalar classifier ability theta in [0,1].

A family of linear SVMs of graded strength is evaluated on a family of tasks
(the levels of an SNR task set). Sorted by their best accuracy the SVMs are
given abilities evenly spaced on [0,1]. For every task the accuracy as a
function of ability is fitted by a four parameter sigmoid (task curve)::

  P(theta) = (u - l) / (1 + exp(-a (theta - b))) + l

with upper and lower bounds u, l, slope a and shift b. The slope and shift
are then modeled as quadratics in the task separability (rs), and the
ability of any classifier is estimated from its accuracies on the tasks by
least squares over theta.

Accuracies within 0.02 of a task's u or l are in the flat part of the curve,
where a small change in accuracy moves theta a lot. Those tasks are flagged,
and theta is reported both with and without them.
"""

from __future__ import division

import logging

import numpy
from scipy import optimize, stats

from .errors import FitDiverged, RankDeficient, AllSaturated, InvalidRange
from .classifiers import ClassifierSpec, train as trainClassifier, predict
from .genericutils import orderedMap

__all__ = ["SigmoidParams", "sigmoid", "fitSigmoid", "TaskCurveSet",
           "fitDifficultyPolynomials", "AbilityEstimate", "estimateAbility",
           "buildTaskCurves", "taskAccuracies", "throttledSpecs", "DEFAULT_C_GRID",
           "SATURATION_BAND"]

_log = logging.getLogger(__name__)

MAX_ITERATIONS = 200
STEP_TOLERANCE = 1e-10
THETA_RESOLUTION = 1e-4
SATURATION_BAND = 0.02

# 30 linear SVMs from heavily to lightly regularized
DEFAULT_C_GRID = tuple(numpy.logspace(-4, 2, 30))

def sigmoid(theta, u, l, a, b) :
  """ Task curve value(s) at theta."""
  return (u - l) / (1 + numpy.exp(-a * (numpy.asarray(theta) - b))) + l

class SigmoidParams(object) :
  """ Fitted task curve.

  'degenerate' is set when the accuracies are constant (u == l, a and b
  meaningless); 'converged' is false when the fit stopped on the iteration
  limit.
  """

  def __init__(self, u, l, a, b, rmse = 0.0, degenerate = False,
               converged = True) :
    self.u, self.l, self.a, self.b = float(u), float(l), float(a), float(b)
    self.rmse = float(rmse)
    self.degenerate = degenerate
    self.converged = converged

  def __repr__(self) :
    return "SigmoidParams(u=%.4g,l=%.4g,a=%.4g,b=%.4g)" % \
           (self.u, self.l, self.a, self.b)

  def __call__(self, theta) :
    return sigmoid(theta, self.u, self.l, self.a, self.b)

  def asDict(self) :
    return {"u" : self.u, "l" : self.l, "a" : self.a, "b" : self.b,
            "rmse" : self.rmse, "degenerate" : self.degenerate,
            "converged" : self.converged}

  @staticmethod
  def fromDict(d) :
    return SigmoidParams(d["u"], d["l"], d["a"], d["b"], d.get("rmse", 0.0),
                         d.get("degenerate", False), d.get("converged", True))

# Fitted in q = (l, log(u-l), log(a), b), so that l < u and a > 0 hold for
# every iterate.

def _unpack(q) :
  l, s, r, b = q
  return l + numpy.exp(s), l, numpy.exp(r), b

def _residuals(q, theta, p) :
  u, l, a, b = _unpack(q)
  return sigmoid(theta, u, l, a, b) - p

def _jacobian(q, theta, p) :
  u, l, a, b = _unpack(q)
  D = u - l
  s = 1 / (1 + numpy.exp(-a * (theta - b)))
  ds = D * s * (1 - s)
  return numpy.column_stack([numpy.ones_like(theta), D * s,
                             ds * a * (theta - b), -ds * a])

def fitSigmoid(theta, pAcc, strict = False) :
  """ Least squares task curve through (theta, pAcc) points.

  Levenberg-Marquardt (damped Gauss-Newton) from u=max(p), l=min(p),
  b=median(theta), a=4/range(theta). Stops when the relative step is below
  1e-10, or after 200 iterations.

  :param theta: abilities (at least 4)
  :param pAcc: accuracies in [0,1]
  :param strict: raise FitDiverged instead of returning an unconverged fit
  :rtype: SigmoidParams
  """

  theta = numpy.asarray(theta, dtype = float)
  p = numpy.asarray(pAcc, dtype = float)
  if len(theta) != len(p) or len(p) < 4 :
    raise InvalidRange("need at least 4 (theta, accuracy) points")
  if not (numpy.all(p >= 0) and numpy.all(p <= 1)) :
    raise InvalidRange("accuracies must be in [0,1]")
  span = numpy.ptp(theta)
  if span <= 0 :
    raise InvalidRange("theta values are all equal")

  u0, l0 = p.max(), p.min()
  a0, b0 = 4.0 / span, float(numpy.median(theta))
  if u0 - l0 < 1e-12 :
    _log.debug("constant accuracies %g, degenerate task curve", u0)
    return SigmoidParams(u0, l0, a0, b0, degenerate = True)

  q0 = numpy.array([l0, numpy.log(u0 - l0), numpy.log(a0), b0])
  fit = optimize.least_squares(_residuals, q0, jac = _jacobian, method = "lm",
                               args = (theta, p), xtol = STEP_TOLERANCE,
                               ftol = 1e-15, gtol = 1e-15,
                               max_nfev = MAX_ITERATIONS)
  converged = fit.status > 0
  q = fit.x
  if not numpy.all(numpy.isfinite(q)) or not numpy.all(numpy.isfinite(fit.fun)) :
    _log.warning("task curve fit ran off to infinity, keeping the initial curve")
    q, converged = q0, False
  u, l, a, b = _unpack(q)
  rmse = float(numpy.sqrt(numpy.mean(_residuals(q, theta, p)**2)))
  if not converged :
    if strict :
      raise FitDiverged("task curve fit did not converge in %d iterations" %
                        MAX_ITERATIONS)
    _log.warning("task curve fit stopped after %d iterations (rmse %.3g)",
                 MAX_ITERATIONS, rmse)
  return SigmoidParams(u, l, a, b, rmse, degenerate = False,
                       converged = converged)

class TaskCurveSet(object) :
  """ Task curves sorted by task rs, with the quadratic models of slope and
  shift in rs.

  h = (h0,h1,h2): a(rs) = h0 + h1 rs + h2 rs^2
  p = (p0,p1,p2): b(rs) = p0 + p1 rs + p2 rs^2
  """

  def __init__(self, rs, params, h, p) :
    order = numpy.argsort(rs, kind = "stable")
    # position of each sorted task in the input order
    self.taskIndex = order
    self.rs = numpy.asarray(rs, dtype = float)[order]
    self.params = [params[i] for i in order]
    self.h = numpy.asarray(h, dtype = float)
    self.p = numpy.asarray(p, dtype = float)

  def __len__(self) :
    return len(self.rs)

  def subset(self, tasks) :
    """ Curve set of the tasks at the given positions (of the rs order), with
    the same slope and shift models."""
    tasks = list(tasks)
    return TaskCurveSet(self.rs[tasks], [self.params[i] for i in tasks],
                        self.h, self.p)

  def a(self, rs) :
    # slope is positive by construction
    return numpy.maximum(numpy.polyval(self.h[::-1], rs), 0.0)

  def b(self, rs) :
    return numpy.polyval(self.p[::-1], rs)

  @property
  def upper(self) :
    return numpy.array([c.u for c in self.params])

  @property
  def lower(self) :
    return numpy.array([c.l for c in self.params])

  def model(self, theta) :
    """ Modeled accuracy of every task (rows) at every theta (columns)."""

    theta = numpy.atleast_1d(numpy.asarray(theta, dtype = float))
    u, l = self.upper[:, numpy.newaxis], self.lower[:, numpy.newaxis]
    a, b = self.a(self.rs)[:, numpy.newaxis], self.b(self.rs)[:, numpy.newaxis]
    return sigmoid(theta[numpy.newaxis, :], u, l, a, b)

  def trends(self) :
    """ Spearman correlation with rs of the fitted shift b and of the curve
    slope at its center, (u-l) a."""

    b = [c.b for c in self.params]
    slope = [(c.u - c.l) * c.a for c in self.params]
    return {"shift" : float(stats.spearmanr(self.rs, b)[0]),
            "slope" : float(stats.spearmanr(self.rs, slope)[0])}

  def asDict(self) :
    return {"rs" : [float(x) for x in self.rs],
            "curves" : [c.asDict() for c in self.params],
            "h" : [float(x) for x in self.h], "p" : [float(x) for x in self.p]}

  @staticmethod
  def fromDict(d) :
    return TaskCurveSet(d["rs"], [SigmoidParams.fromDict(c) for c in d["curves"]],
                        d["h"], d["p"])

def fitDifficultyPolynomials(curves) :
  """ Quadratic models of task curve slope and shift in task rs.

  :param curves: sequence of (rs, SigmoidParams)
  :rtype: TaskCurveSet
  """

  rs = numpy.array([r for r,c in curves], dtype = float)
  if len(numpy.unique(rs)) < 3 :
    raise RankDeficient("need at least 3 tasks with distinct rs (got %d)" %
                        len(numpy.unique(rs)))

  design = numpy.column_stack([numpy.ones_like(rs), rs, rs**2])
  a = numpy.array([c.a for r,c in curves])
  b = numpy.array([c.b for r,c in curves])
  h, _, rank, _ = numpy.linalg.lstsq(design, a, rcond = None)
  if rank < 3 :
    raise RankDeficient("quadratic design in rs has rank %d" % rank)
  p = numpy.linalg.lstsq(design, b, rcond = None)[0]
  return TaskCurveSet(rs, [c for r,c in curves], h, p)

class AbilityEstimate(object) :
  """ Estimated ability.

  theta excludes the saturated tasks, thetaAll uses every task. residuals
  (modeled minus observed accuracy, at theta) and saturated are per task, in
  the task order of the curve set.
  """

  def __init__(self, theta, thetaAll, residuals, saturated) :
    self.theta = float(theta)
    self.thetaAll = float(thetaAll)
    self.residuals = numpy.asarray(residuals, dtype = float)
    self.saturated = numpy.asarray(saturated, dtype = bool)

  def __repr__(self) :
    return "AbilityEstimate(theta=%.4f, all tasks %.4f, %d saturated)" % \
           (self.theta, self.thetaAll, self.saturated.sum())

  def asDict(self) :
    return {"theta" : self.theta, "thetaAll" : self.thetaAll,
            "residuals" : [float(x) for x in self.residuals],
            "saturated" : [bool(x) for x in self.saturated]}

def _argminTheta(curves, acc, use) :
  grid = numpy.linspace(0, 1, int(round(1 / THETA_RESOLUTION)) + 1)
  sse = ((curves.model(grid)[use] - acc[use, numpy.newaxis])**2).sum(axis = 0)
  i = int(numpy.argmin(sse))

  lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
  f = lambda t : float(((curves.model(t)[use, 0] - acc[use])**2).sum())
  r = optimize.minimize_scalar(f, bounds = (lo, hi), method = "bounded",
                               options = {"xatol" : 1e-9})
  best = r.x if r.fun < sse[i] else grid[i]
  return float(min(1.0, max(0.0, best)))

def estimateAbility(curves, accuracies, band = SATURATION_BAND) :
  """ Ability of a classifier from its accuracies on the tasks of a curve
  set.

  :param curves: fitted curves
  :type curves: TaskCurveSet
  :param accuracies: accuracy per task, in the order of curves.rs (input
    order values can be brought in line with accuracies[curves.taskIndex])
  :param band: saturation band around each task's u and l
  :rtype: AbilityEstimate
  """

  acc = numpy.asarray(accuracies, dtype = float)
  if len(acc) != len(curves) :
    raise InvalidRange("%d accuracies for %d tasks" % (len(acc), len(curves)))

  saturated = (numpy.abs(acc - curves.upper) <= band) | \
              (numpy.abs(acc - curves.lower) <= band)
  if saturated.all() :
    raise AllSaturated("all %d accuracies are in a saturation zone" % len(acc))

  everything = numpy.ones(len(acc), dtype = bool)
  thetaAll = _argminTheta(curves, acc, everything)
  theta = _argminTheta(curves, acc, ~saturated)
  residuals = curves.model(theta)[:, 0] - acc
  _log.info("ability %.4f (%.4f with %d saturated tasks)", theta, thetaAll,
            saturated.sum())
  return AbilityEstimate(theta, thetaAll, residuals, saturated)

def taskAccuracies(model, taskset, nThreads = None) :
  """ Mean accuracy of a trained model on every level of a task set."""

  cells = [(i, t) for i in range(len(taskset.levels))
           for t in range(taskset.trials)]
  accs = orderedMap(lambda it : predict(model, taskset.test(*it))[1], cells,
                    nThreads)
  return numpy.array(accs).reshape(len(taskset.levels), taskset.trials).mean(axis = 1)

def throttledSpecs(cGrid, epochs = 300, seed = 0) :
  """ Linear SVM specs of graded strength: C from cGrid (ascending), the
  i-th of k models trained for about epochs (i+1)/k epochs."""

  cGrid = sorted(float(c) for c in cGrid)
  k = len(cGrid)
  return [ClassifierSpec("linearsvm", cReg = c,
                         epochs = max(1, int(round(epochs * (i + 1) / k))),
                         seed = seed)
          for i, c in enumerate(cGrid)]

def buildTaskCurves(train, cGrid, taskset, epochs = 300, seed = 0, specs = None,
                    nThreads = None) :
  """ Accuracy matrix of a graded family of linear SVMs over a task set.

  The models are trained on the clean data and evaluated on every task
  (mean over trials). Columns are sorted by their largest accuracy and given
  abilities evenly spaced on [0,1].

  :param train: clean training data
  :param cGrid: at least 4 values of C (ignored when specs are given)
  :param taskset: tasks
  :type taskset: SnrTaskSet
  :param specs: explicit classifier specs (at least 2) instead of a C grid
  :returns: (accuracy matrix tasks x models, theta grid, sorted specs)
  """

  if specs is None :
    if len(cGrid) < 4 :
      raise InvalidRange("need at least 4 values of C (got %d)" % len(cGrid))
    specs = throttledSpecs(cGrid, epochs, seed)
  elif len(specs) < 2 :
    raise InvalidRange("need at least 2 classifiers")

  cols = []
  for spec in specs :
    model = trainClassifier(spec, train)
    cols.append(taskAccuracies(model, taskset, nThreads))
    _log.info("%s: accuracy %.3f..%.3f", spec.name, cols[-1].min(), cols[-1].max())
  pAcc = numpy.column_stack(cols)

  order = numpy.argsort(pAcc.max(axis = 0), kind = "stable")
  theta = numpy.linspace(0, 1, len(specs))
  return pAcc[:, order], theta, [specs[i] for i in order]
