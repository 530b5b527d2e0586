## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
======================
Feature Preprocessing
======================

Common feature transforms. All but ``l2norm`` work per feature (rows of the
d x m matrix); ``l2norm`` scales every sample (column) to unit length.

============  ===============================================
``minmax``    (x - min(x)) / (max(x) - min(x))
``meannorm``  (x - mean(x)) / (max(x) - min(x))
``l2norm``    x / ||x||_2, per sample
``center``    x - mean(x)
``standardize`` (x - mean(x)) / std(x)
============  ===============================================
"""

from __future__ import division

import numpy

from .errors import DegenerateFeature, ZeroVector

__all__ = ["METHODS", "preprocess"]

METHODS = ("minmax", "meannorm", "l2norm", "center", "standardize")

def _range(x) :
  span = x.max(axis = 1) - x.min(axis = 1)
  bad = numpy.flatnonzero(span == 0)
  if len(bad) :
    raise DegenerateFeature(int(bad[0]), "constant (max == min)")
  return span[:, numpy.newaxis]

def preprocess(lm, method) :
  """ Transformed copy of a labeled matrix. Labels and sample count are kept.

  :param lm: labeled matrix
  :param method: one of METHODS
  """

  x = lm.data
  if method == "minmax" :
    y = (x - x.min(axis = 1)[:, numpy.newaxis]) / _range(x)
  elif method == "meannorm" :
    y = (x - x.mean(axis = 1)[:, numpy.newaxis]) / _range(x)
  elif method == "center" :
    y = x - x.mean(axis = 1)[:, numpy.newaxis]
  elif method == "standardize" :
    sd = x.std(axis = 1)
    bad = numpy.flatnonzero(sd == 0)
    if len(bad) :
      raise DegenerateFeature(int(bad[0]), "zero standard deviation")
    y = (x - x.mean(axis = 1)[:, numpy.newaxis]) / sd[:, numpy.newaxis]
  elif method == "l2norm" :
    norms = numpy.linalg.norm(x, axis = 0)
    bad = numpy.flatnonzero(norms == 0)
    if len(bad) :
      raise ZeroVector(int(bad[0]))
    y = x / norms
  else :
    raise ValueError("unknown preprocessing method " + str(method))

  meta = dict(lm.meta)
  meta["preprocess"] = method
  return lm.withData(y, meta)
