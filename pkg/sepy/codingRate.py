## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
============
Coding Rates
============

Rate-distortion estimates for real valued data, and the log-determinant kernel
they share.

For a d x m matrix X (one column per sample) and precision :math:`\\epsilon`,
the coding rate of zero mean data is

  :math:`R(X,\\epsilon) = \\frac{m}{2} \\log_2 \\det(I + \\frac{d}{m\\epsilon^2} X X^T)`

and for data with mean :math:`\\mu`, centered :math:`\\bar{X} = X - \\mu 1^T`,

  :math:`R(X,\\epsilon) = \\frac{m}{2} \\log_2 \\det(I + \\frac{d}{m\\epsilon^2}
  \\bar{X} \\bar{X}^T) + \\frac{d}{2} \\log_2(1 + \\mu^T\\mu/\\epsilon^2)`.

The per-class rate sums the same quantity over the classes of a labeled
matrix; for the non-zero mean variant each class mean term is weighted by
d/(2k) instead of d/2. The sum over classes never exceeds the rate of the
whole matrix, with equality when all classes share covariance and mean.

All logarithms are base 2 (bits).

>>> codingRateZeroMean(numpy.zeros((3, 5)), 1.0)
0.0
>>> x = numpy.array([[1.0], [0.0]])
>>> round(codingRateZeroMean(x, 2 ** 0.5), 12)    # x'x = eps^2 m / d, rate = m/2
0.5
"""

from __future__ import division

import logging

import numpy
import scipy.linalg

from .errors import NonFinite, NonPositiveEpsilon, DataError

__all__ = ["ZERO_MEAN", "NON_ZERO_MEAN", "DEFAULT_EPSILON", "CodingConfig",
           "logdetIplus", "codingRateZeroMean", "codingRateNonZeroMean",
           "codingRate", "perClassCodingRate", "avgPool2x2"]

_log = logging.getLogger(__name__)

ZERO_MEAN = "zero-mean"
NON_ZERO_MEAN = "nonzero-mean"

DEFAULT_EPSILON = 0.5

# relative jitter added to the diagonal when the Cholesky factorization fails
_JITTER = 1e-12

class CodingConfig(object) :
  """ Encoding precision and coding rate variant."""

  LOG_BASE = 2
  VARIANTS = (ZERO_MEAN, NON_ZERO_MEAN)

  def __init__(self, epsilon = DEFAULT_EPSILON, variant = NON_ZERO_MEAN) :
    epsilon = float(epsilon)
    if not epsilon > 0 :
      raise NonPositiveEpsilon("epsilon must be positive (got %g)" % epsilon)
    if variant not in CodingConfig.VARIANTS :
      raise ValueError("unknown variant " + str(variant))
    self.epsilon = epsilon
    self.variant = variant

  def __repr__(self) :
    return "CodingConfig(epsilon=%g,variant=%s)" % (self.epsilon, self.variant)

  def asDict(self) :
    return {"epsilon" : self.epsilon, "variant" : self.variant,
            "logBase" : CodingConfig.LOG_BASE}

def _checkInput(X, epsilon) :
  X = numpy.asarray(X, dtype = float)
  if X.ndim != 2 :
    raise DataError("expected a matrix, got shape %s" % (X.shape,))
  if not numpy.all(numpy.isfinite(X)) :
    raise NonFinite("matrix has NaN or infinite entries")
  if not epsilon > 0 :
    raise NonPositiveEpsilon("epsilon must be positive (got %g)" % epsilon)
  return X

def logdetIplus(X, alpha) :
  """ :math:`\\log_2 \\det(I + \\alpha X X^T)` for a d x m matrix X.

  Computed from the Cholesky factor of the smaller of the two Gram forms
  (:math:`I_d + \\alpha X X^T` or :math:`I_m + \\alpha X^T X`, which have the
  same determinant).

  :param X: real matrix
  :param alpha: positive scale
  """

  d, m = X.shape
  g = numpy.dot(X.T, X) if m < d else numpy.dot(X, X.T)
  a = alpha * g
  a[numpy.diag_indices_from(a)] += 1.0

  try :
    c, low = scipy.linalg.cho_factor(a, lower = True, check_finite = False)
  except numpy.linalg.LinAlgError :
    _log.warning("Cholesky failed on %dx%d argument, retrying with jitter",
                 a.shape[0], a.shape[0])
    a[numpy.diag_indices_from(a)] += _JITTER * max(1.0, numpy.abs(a).max())
    try :
      c, low = scipy.linalg.cho_factor(a, lower = True, check_finite = False)
    except numpy.linalg.LinAlgError :
      raise DataError("log-det argument is not positive definite")

  return 2.0 * numpy.sum(numpy.log2(numpy.diag(c)))

def codingRateZeroMean(X, epsilon) :
  """ Coding rate (bits) of X, treating the data as zero mean.

  :param X: d x m real matrix
  :param epsilon: encoding precision, > 0
  """

  X = _checkInput(X, epsilon)
  d, m = X.shape
  r = (m / 2.0) * logdetIplus(X, d / (m * epsilon**2))
  return max(0.0, float(r))

def _meanTerm(mu, epsilon, weight) :
  return weight * numpy.log2(1.0 + numpy.dot(mu, mu) / epsilon**2)

def codingRateNonZeroMean(X, epsilon) :
  """ Coding rate (bits) of X: centered part plus the cost of the mean.

  :param X: d x m real matrix
  :param epsilon: encoding precision, > 0
  """

  X = _checkInput(X, epsilon)
  d, m = X.shape
  mu = X.mean(axis = 1)
  xbar = X - mu[:, numpy.newaxis]
  r = (m / 2.0) * logdetIplus(xbar, d / (m * epsilon**2)) + \
      _meanTerm(mu, epsilon, d / 2.0)
  return max(0.0, float(r))

def codingRate(X, config) :
  """ Coding rate of matrix X under the variant selected by config."""
  if config.variant == ZERO_MEAN :
    return codingRateZeroMean(X, config.epsilon)
  return codingRateNonZeroMean(X, config.epsilon)

def perClassCodingRate(lm, config) :
  """ Sum of the class coding rates of a labeled matrix.

  For the non-zero mean variant each class mean term carries weight
  d/(2k). Classes are summed in class id order.

  :param lm: labeled matrix
  :type lm: LabeledMatrix
  :param config: coding configuration
  :type config: CodingConfig
  """

  eps = config.epsilon
  d = lm.nFeatures
  total = 0.0
  for j in range(lm.k) :
    xj = lm.classData(j)
    if config.variant == ZERO_MEAN :
      total += codingRateZeroMean(xj, eps)
    else :
      xj = _checkInput(xj, eps)
      mj = xj.shape[1]
      mu = xj.mean(axis = 1)
      xbar = xj - mu[:, numpy.newaxis]
      total += (mj / 2.0) * logdetIplus(xbar, d / (mj * eps**2)) + \
               _meanTerm(mu, eps, d / (2.0 * lm.k))
  return max(0.0, float(total))

def avgPool2x2(tensor) :
  """ Non-overlapping 2x2 mean pooling (stride 2) of a n x c x h x w tensor.

  An odd trailing row or column is pooled over the part of the window that
  exists.

  >>> avgPool2x2(numpy.arange(1., 10.).reshape(1, 1, 3, 3))[0, 0].tolist()
  [[3.0, 4.5], [7.5, 9.0]]
  """

  t = numpy.asarray(tensor, dtype = float)
  if t.ndim != 4 or min(t.shape[2:]) < 1 :
    raise DataError("expected a n x c x h x w tensor, got shape %s" % (t.shape,))

  n, c, h, w = t.shape
  ph, pw = h % 2, w % 2
  t = numpy.pad(t, ((0, 0), (0, 0), (0, ph), (0, pw)))
  counts = numpy.pad(numpy.ones((h, w)), ((0, ph), (0, pw)))

  h2, w2 = (h + ph) // 2, (w + pw) // 2
  sums = t.reshape(n, c, h2, 2, w2, 2).sum(axis = (3, 5))
  counts = counts.reshape(h2, 2, w2, 2).sum(axis = (1, 3))
  return sums / counts

if __name__ == '__main__':
  import doctest
  doctest.testmod()
