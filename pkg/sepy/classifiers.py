## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
====================
Baseline Classifiers
====================

Three small classifiers used to get recognition accuracies:

  ``knn``        K nearest neighbours (euclidean), majority vote
  ``logreg``     multinomial logistic regression, L2 penalty alpha, full batch
                 gradient descent
  ``linearsvm``  one-vs-rest linear SVM, hinge loss with L2 penalty 1/C,
                 subgradient descent

Features are standardized with the training set mean and SD, which are kept in
the model and applied again at prediction time. Training runs for a fixed
number of epochs; there is no convergence test.
"""

from __future__ import division

import logging

import numpy
from scipy.spatial.distance import cdist

from .errors import InvalidSpec, SingleClass, DimensionMismatch, BadModelFile

__all__ = ["KINDS", "ClassifierSpec", "TrainedModel", "train", "predict",
           "saveModel", "loadModel"]

_log = logging.getLogger(__name__)

KINDS = ("knn", "logreg", "linearsvm")

_MODEL_MAGIC = "sepy-model"
_MODEL_VERSION = 1

class ClassifierSpec(object) :
  """ Classifier kind and hyper-parameters."""

  def __init__(self, kind, kNeighbors = 5, cReg = 1.0, alphaReg = 1e-4,
               epochs = 300, learningRate = 0.5, seed = 0) :
    if kind not in KINDS :
      raise InvalidSpec("unknown classifier %r (one of %s)" % (kind, ",".join(KINDS)))
    if not (kNeighbors >= 1 and cReg > 0 and alphaReg > 0 and epochs >= 1
            and learningRate > 0) :
      raise InvalidSpec("classifier parameters must be positive")

    self.kind = kind
    self.kNeighbors = int(kNeighbors)
    self.cReg = float(cReg)
    self.alphaReg = float(alphaReg)
    self.epochs = int(epochs)
    self.learningRate = float(learningRate)
    self.seed = int(seed)

  def __repr__(self) :
    return "ClassifierSpec(%s)" % ",".join(["%s=%s" % x for x in
                                            sorted(self.asDict().items())])

  def asDict(self) :
    d = {"kind" : self.kind, "seed" : self.seed}
    if self.kind == "knn" :
      d["kNeighbors"] = self.kNeighbors
    else :
      d["epochs"] = self.epochs
      d["learningRate"] = self.learningRate
      if self.kind == "logreg" :
        d["alphaReg"] = self.alphaReg
      else :
        d["cReg"] = self.cReg
    return d

  @staticmethod
  def fromDict(d) :
    return ClassifierSpec(**d)

  @property
  def name(self) :
    """ Short label used in reports (kind plus the parameter that matters)."""
    if self.kind == "knn" :
      return "knn%d" % self.kNeighbors
    if self.kind == "logreg" :
      return "logreg(alpha=%g)" % self.alphaReg
    return "linearsvm(C=%g)" % self.cReg

def _frozen(a) :
  a = numpy.array(a, dtype = float)
  a.setflags(write = False)
  return a

class TrainedModel(object) :
  """ Learned parameters of a classifier. Immutable.

  For linear models 'weights' is k x d and 'bias' has length k; a sample is
  given the class with the largest score. A Knn model keeps the standardized
  training samples (m x d) and their labels.
  """

  def __init__(self, spec, classes, mean, scale, weights = None, bias = None,
               samples = None, labels = None) :
    self.spec = spec
    self.classes = numpy.array(classes, dtype = int)
    self.classes.setflags(write = False)
    self.mean = _frozen(mean)
    self.scale = _frozen(scale)
    self.weights = None if weights is None else _frozen(weights)
    self.bias = None if bias is None else _frozen(bias)
    self.samples = None if samples is None else _frozen(samples)
    if labels is None :
      self.labels = None
    else :
      self.labels = numpy.array(labels, dtype = int)
      self.labels.setflags(write = False)

  @property
  def kind(self) :
    return self.spec.kind

  @property
  def nFeatures(self) :
    return len(self.mean)

  def standardize(self, x) :
    """ x (m x d) in model coordinates."""
    return (x - self.mean) / self.scale

  def scores(self, x) :
    """ Class scores (m x k) of standardized samples, linear models only."""
    return x.dot(self.weights.T) + self.bias

def _softmax(z) :
  z = z - z.max(axis = 1)[:, numpy.newaxis]
  e = numpy.exp(z)
  return e / e.sum(axis = 1)[:, numpy.newaxis]

def _stepSize(spec, x) :
  # gradient steps are scaled by the mean squared sample norm
  return spec.learningRate / max(1.0, 0.5 * numpy.mean(numpy.sum(x**2, axis = 1)))

def _trainLogReg(spec, x, y, k, rng) :
  m, d = x.shape
  w = rng.normal(0.0, 0.01, (k, d))
  b = numpy.zeros(k)
  onehot = numpy.eye(k)[y]
  eta = _stepSize(spec, x)

  for epoch in range(spec.epochs) :
    g = (_softmax(x.dot(w.T) + b) - onehot) / m
    w -= eta * (g.T.dot(x) + spec.alphaReg * w)
    b -= eta * g.sum(axis = 0)

    if _log.isEnabledFor(logging.DEBUG) and epoch % 100 == 0 :
      p = _softmax(x.dot(w.T) + b)[numpy.arange(m), y]
      _log.debug("logreg epoch %d loss %.6g", epoch, -numpy.mean(numpy.log(p + 1e-300)))
  return w, b

def _trainLinearSvm(spec, x, y, k, rng) :
  m, d = x.shape
  lam = 1.0 / spec.cReg
  # +1 for the class of each one-vs-rest problem, -1 for the rest
  t = numpy.where(numpy.eye(k, dtype = bool)[y], 1.0, -1.0)
  w = rng.normal(0.0, 0.01, (k, d))
  b = numpy.zeros(k)
  eta0 = _stepSize(spec, x)

  wsum, bsum, nsum = numpy.zeros_like(w), numpy.zeros_like(b), 0
  for epoch in range(spec.epochs) :
    eta = min(eta0 / numpy.sqrt(epoch + 1), 1.0 / (lam * (epoch + 1)))
    margin = t * (x.dot(w.T) + b)
    active = (margin < 1) * t / m
    w -= eta * (lam * w - active.T.dot(x))
    b += eta * active.sum(axis = 0)

    # iterates of the second half are averaged
    if 2 * epoch >= spec.epochs - 1 :
      wsum += w
      bsum += b
      nsum += 1
  return wsum / nsum, bsum / nsum

def train(spec, lm) :
  """ Train a classifier on a labeled matrix.

  The same spec (including seed) and data always give the same model.

  :param spec: classifier parameters
  :type spec: ClassifierSpec
  :param lm: training data
  :type lm: LabeledMatrix
  :returns: TrainedModel
  """

  if lm.k < 2 :
    raise SingleClass("training data has a single class")
  if spec.kind == "knn" and spec.kNeighbors > lm.nSamples :
    raise InvalidSpec("K=%d larger than the training set (%d)" %
                      (spec.kNeighbors, lm.nSamples))

  x = lm.samples()
  mean = x.mean(axis = 0)
  scale = x.std(axis = 0)
  scale[scale == 0] = 1.0
  xs = (x - mean) / scale
  y = lm.labels
  classes = numpy.arange(lm.k)

  _log.debug("training %s on %d x %d", spec.name, lm.nSamples, lm.nFeatures)
  if spec.kind == "knn" :
    return TrainedModel(spec, classes, mean, scale, samples = xs, labels = y)

  rng = numpy.random.default_rng(spec.seed)
  fit = _trainLogReg if spec.kind == "logreg" else _trainLinearSvm
  w, b = fit(spec, xs, y, lm.k, rng)
  return TrainedModel(spec, classes, mean, scale, weights = w, bias = b)

def _knnPredict(model, x, block = 512) :
  K = model.spec.kNeighbors
  k = len(model.classes)
  out = numpy.empty(len(x), dtype = int)
  for s in range(0, len(x), block) :
    dm = cdist(x[s:s+block], model.samples)
    top = numpy.argsort(dm, axis = 1, kind = "stable")[:, :K]
    votes = numpy.zeros((len(top), k), dtype = int)
    for j in range(K) :
      votes[numpy.arange(len(top)), model.labels[top[:, j]]] += 1
    # argmax takes the smallest class id among ties
    out[s:s+block] = votes.argmax(axis = 1)
  return out

def predict(model, lm) :
  """ Predicted labels and accuracy on a labeled matrix.

  :returns: (labels array, fraction of samples predicted correctly)
  """

  if lm.nFeatures != model.nFeatures :
    raise DimensionMismatch("model has %d features, data %d" %
                            (model.nFeatures, lm.nFeatures))
  x = model.standardize(lm.samples())
  if model.kind == "knn" :
    pred = _knnPredict(model, x)
  else :
    pred = model.scores(x).argmax(axis = 1)
  pred = model.classes[pred]
  return pred, float(numpy.mean(pred == lm.labels))

def _row(a) :
  return " ".join(["%.17g" % v for v in a])

def saveModel(model, path) :
  """ Write model as a versioned plain text parameter dump."""

  import json
  with open(path, "w") as f :
    f.write("%s %d\n" % (_MODEL_MAGIC, _MODEL_VERSION))
    f.write("spec %s\n" % json.dumps(model.spec.asDict(), sort_keys = True))
    f.write("classes %s\n" % " ".join([str(c) for c in model.classes]))
    f.write("mean %s\n" % _row(model.mean))
    f.write("scale %s\n" % _row(model.scale))
    if model.kind == "knn" :
      f.write("samples %d\n" % len(model.samples))
      for x, lab in zip(model.samples, model.labels) :
        f.write("%d %s\n" % (lab, _row(x)))
    else :
      f.write("weights %d\n" % len(model.weights))
      for w, b in zip(model.weights, model.bias) :
        f.write("%s %s\n" % (_row([b]), _row(w)))

def loadModel(path) :
  """ Read a model written by :func:`saveModel`."""

  import json
  with open(path) as f :
    lines = [l.split(None, 1) for l in f.read().splitlines()]

  try :
    magic, version = lines[0][0], int(lines[0][1])
    if magic != _MODEL_MAGIC :
      raise BadModelFile("%s: not a sepy model" % path)
    if version != _MODEL_VERSION :
      raise BadModelFile("%s: model version %d not supported" % (path, version))
    head = dict([(l[0], l[1] if len(l) > 1 else "") for l in lines[1:5]])
    spec = ClassifierSpec.fromDict(json.loads(head["spec"]))
    classes = [int(c) for c in head["classes"].split()]
    mean = [float(v) for v in head["mean"].split()]
    scale = [float(v) for v in head["scale"].split()]
    count = int(lines[5][1])
    rows = numpy.array([[float(v) for v in " ".join(l).split()]
                        for l in lines[6:6+count]])
    if len(rows) != count or rows.shape[1] != len(mean) + 1 :
      raise BadModelFile("%s: truncated parameter block" % path)
  except (IndexError, KeyError, ValueError, TypeError) as e :
    raise BadModelFile("%s: %s" % (path, e))

  if spec.kind == "knn" :
    return TrainedModel(spec, classes, mean, scale, samples = rows[:, 1:],
                        labels = rows[:, 0].astype(int))
  return TrainedModel(spec, classes, mean, scale, weights = rows[:, 1:],
                      bias = rows[:, 0])
