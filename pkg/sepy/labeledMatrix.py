## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
===============
Labeled Matrix
===============

A data set for classification: a d x m real matrix, one column per sample,
and an integer class id per column.

Columns (not rows) are samples throughout sepy. :meth:`LabeledMatrix.samples`
gives the m x d view expected by distance routines.

>>> lm = LabeledMatrix([[0., 1., 5., 6.]], [0, 0, 1, 1])
>>> lm.nFeatures, lm.nSamples, lm.k
(1, 4, 2)
>>> [int(x) for x in lm.classCounts()]
[2, 2]
"""

import numpy

from .errors import NonFinite, InvalidLabels, EmptyClass

__all__ = ["LabeledMatrix"]

class LabeledMatrix(object) :
  """ Feature matrix (features x samples) with hard class labels.

  The matrix and labels are copied and frozen on construction.
  """

  def __init__(self, data, labels, k = None, meta = None) :
    """
    :param data: d x m array like, one column per sample
    :param labels: m integer class ids in [0,k)
    :param k: number of classes. Default is max(labels)+1.
    :param meta: optional dictionary of provenance information (generator
      parameters, source file) carried along into reports.
    """

    data = numpy.array(data, dtype = float)
    if data.ndim == 1 :
      data = data.reshape(1, -1)
    if data.ndim != 2 :
      raise InvalidLabels("data must be a matrix, got %d dimensions" % data.ndim)

    d, m = data.shape
    if d < 1 or m < 2 :
      raise InvalidLabels("need at least one feature and two samples (got %dx%d)"
                          % (d, m))
    if not numpy.all(numpy.isfinite(data)) :
      bad = numpy.argwhere(~numpy.isfinite(data))[0]
      raise NonFinite("non finite entry at feature %d, sample %d" % tuple(bad))

    labels = numpy.asarray(labels)
    if labels.shape != (m,) :
      raise InvalidLabels("expected %d labels, got %s" % (m, labels.shape))
    if labels.dtype.kind == 'f' :
      if not numpy.all(labels == numpy.round(labels)) :
        raise InvalidLabels("labels must be integers")
    labels = labels.astype(int)
    if labels.min() < 0 :
      raise InvalidLabels("negative class id %d" % labels.min())

    if k is None :
      k = int(labels.max()) + 1
    if labels.max() >= k :
      raise InvalidLabels("class id %d out of range [0,%d)" % (labels.max(), k))

    counts = numpy.bincount(labels, minlength = k)
    if not numpy.all(counts > 0) :
      raise EmptyClass("class %d has no samples" % int(numpy.argmin(counts)))

    data.flags.writeable = False
    labels.flags.writeable = False
    counts.flags.writeable = False

    self.data = data
    self.labels = labels
    self.k = int(k)
    self.counts = counts
    self.meta = dict(meta) if meta else dict()

  @staticmethod
  def fromSamples(samples, labels, k = None, meta = None) :
    """ Build from a m x d array (one row per sample)."""
    return LabeledMatrix(numpy.asarray(samples, dtype = float).T, labels, k, meta)

  def __repr__(self) :
    return "LabeledMatrix(d=%d,m=%d,k=%d)" % (self.nFeatures, self.nSamples, self.k)

  @property
  def nFeatures(self) :
    return self.data.shape[0]

  @property
  def nSamples(self) :
    return self.data.shape[1]

  def samples(self) :
    """ m x d view, one row per sample."""
    return self.data.T

  def classCounts(self) :
    return self.counts

  def classIndices(self, j) :
    return numpy.flatnonzero(self.labels == j)

  def classData(self, j) :
    """ d x m_j matrix of class j samples (in input order)."""
    return self.data[:, self.labels == j]

  def withData(self, data, meta = None) :
    """ Same labels, new d' x m matrix."""
    return LabeledMatrix(data, self.labels, self.k,
                         self.meta if meta is None else meta)

  def permuted(self, order) :
    """ Samples reordered by the permutation 'order'."""
    order = numpy.asarray(order)
    return LabeledMatrix(self.data[:, order], self.labels[order], self.k, self.meta)

  def relabeled(self, mapping) :
    """ Class j renamed mapping[j]. 'mapping' must be a permutation of 0..k-1."""
    mapping = numpy.asarray(mapping)
    assert sorted(mapping) == list(range(self.k))
    return LabeledMatrix(self.data, mapping[self.labels], self.k, self.meta)

  def subset(self, columns) :
    """ Samples in 'columns' (class ids kept as is, k may shrink)."""
    columns = numpy.asarray(columns)
    labels = self.labels[columns]
    present = numpy.unique(labels)
    remap = numpy.zeros(self.k, dtype = int)
    remap[present] = numpy.arange(len(present))
    return LabeledMatrix(self.data[:, columns], remap[labels], len(present), self.meta)

if __name__ == '__main__':
  import doctest
  doctest.testmod()
