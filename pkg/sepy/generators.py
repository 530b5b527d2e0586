## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
==================
Synthetic Datasets
==================

Seeded two-class generators in the plane, additive white Gaussian noise at a
given signal to noise ratio, and families of noisy test sets (SNR task sets).

Shapes, roughly from most to least separable:

  ``blobs``    two isotropic Gaussians at (-5,0) and (5,0), SD = noise
  ``moons``    two interleaving half circles (radius 1, second one offset by
               (1,0.5)) plus Gaussian jitter
  ``circles``  concentric circles of radii 1 and 0.5 plus jitter
  ``xor``      four Gaussians at (+-1,+-1), class by the sign product of the
               center, SD = noise
  ``spirals``  two Archimedean spirals r = theta/(4 pi), theta in [0,4 pi],
               the second rotated by pi, plus jitter
  ``random``   uniform on the unit square, labels assigned at random
  ``boundary`` uniform on [0,2 pi]x[-2,2], class by the side of
               y = sin(level x); a fifth of each class is drawn inside a band
               of width 0.1 along the boundary

Every generated matrix has samplesPerClass samples per class, class 0 first.
"""

from __future__ import division

import logging, math

import numpy

from .errors import InvalidSpec, ZeroSignalPower, InvalidRange
from .labeledMatrix import LabeledMatrix

__all__ = ["SHAPES", "DEFAULT_NOISE", "GeneratorSpec", "generate",
           "injectNoiseSNR", "SnrTaskSet", "buildSNRTaskSet", "derivedSeed"]

_log = logging.getLogger(__name__)

SHAPES = ("blobs", "moons", "circles", "xor", "spirals", "random", "boundary")

# default SD / jitter of each shape
DEFAULT_NOISE = {"blobs" : 1.0, "moons" : 0.1, "circles" : 0.05, "xor" : 1.0,
                 "spirals" : 0.05, "random" : 0.0, "boundary" : 0.0}

_BAND_WIDTH = 0.1
_BAND_FRACTION = 0.2

class GeneratorSpec(object) :
  """ Parameters of a synthetic data set."""

  def __init__(self, shape, samplesPerClass = 1000, noise = None, level = 1,
               seed = 0) :
    """
    :param shape: one of SHAPES
    :param samplesPerClass: >= 2
    :param noise: SD (blobs, xor) or jitter of the shape. None for the shape
      default.
    :param level: boundary frequency, 1 to 4 (boundary only)
    :param seed: integer seed
    """

    if shape not in SHAPES :
      raise InvalidSpec("unknown shape %r (one of %s)" % (shape, ",".join(SHAPES)))
    if int(samplesPerClass) < 2 :
      raise InvalidSpec("need at least 2 samples per class")
    if noise is None :
      noise = DEFAULT_NOISE[shape]
    if not noise >= 0 :
      raise InvalidSpec("noise must be non negative")
    if shape == "boundary" and not 1 <= level <= 4 :
      raise InvalidSpec("boundary level must be in [1,4]")

    self.shape = shape
    self.samplesPerClass = int(samplesPerClass)
    self.noise = float(noise)
    self.level = int(level)
    self.seed = int(seed)

  def __repr__(self) :
    return "GeneratorSpec(%s,n=%d,noise=%g,level=%d,seed=%d)" % \
           (self.shape, self.samplesPerClass, self.noise, self.level, self.seed)

  def asDict(self) :
    d = {"shape" : self.shape, "samplesPerClass" : self.samplesPerClass,
         "sd" : self.noise, "seed" : self.seed}
    if self.shape == "boundary" :
      d["level"] = self.level
    return d

def _jitter(rng, pts, sd) :
  if sd > 0 :
    pts = pts + rng.normal(0.0, sd, pts.shape)
  return pts

def _blobs(rng, n, sd) :
  c0 = rng.normal(0.0, sd, (n, 2)) + (-5.0, 0.0)
  c1 = rng.normal(0.0, sd, (n, 2)) + (5.0, 0.0)
  return c0, c1

def _moons(rng, n, sd) :
  t0 = rng.uniform(0, math.pi, n)
  t1 = rng.uniform(0, math.pi, n)
  c0 = numpy.column_stack([numpy.cos(t0), numpy.sin(t0)])
  c1 = numpy.column_stack([1 - numpy.cos(t1), 0.5 - numpy.sin(t1)])
  return _jitter(rng, c0, sd), _jitter(rng, c1, sd)

def _circles(rng, n, sd) :
  t0 = rng.uniform(0, 2*math.pi, n)
  t1 = rng.uniform(0, 2*math.pi, n)
  c0 = numpy.column_stack([numpy.cos(t0), numpy.sin(t0)])
  c1 = 0.5 * numpy.column_stack([numpy.cos(t1), numpy.sin(t1)])
  return _jitter(rng, c0, sd), _jitter(rng, c1, sd)

def _xor(rng, n, sd) :
  # alternate between the two centers of each class
  s0 = numpy.where(numpy.arange(n) % 2 == 0, 1.0, -1.0)[:, numpy.newaxis]
  c0 = s0 * (1.0, 1.0) + rng.normal(0.0, sd, (n, 2))
  c1 = s0 * (1.0, -1.0) + rng.normal(0.0, sd, (n, 2))
  return c0, c1

def _spirals(rng, n, sd) :
  def arm(phase) :
    theta = rng.uniform(0, 4*math.pi, n)
    r = theta / (4*math.pi)
    return numpy.column_stack([r * numpy.cos(theta + phase),
                               r * numpy.sin(theta + phase)])
  c0 = arm(0.0)
  c1 = arm(math.pi)
  return _jitter(rng, c0, sd), _jitter(rng, c1, sd)

def _random(rng, n, sd) :
  pts = rng.uniform(0, 1, (2*n, 2))
  labels = rng.permutation(numpy.repeat([0, 1], n))
  return pts[labels == 0], pts[labels == 1]

def _boundary(rng, n, level) :
  def side(sign, count) :
    got = []
    while sum(len(x) for x in got) < count :
      x = rng.uniform(0, 2*math.pi, 2*count)
      y = rng.uniform(-2, 2, 2*count)
      keep = sign * (y - numpy.sin(level * x)) > 0
      got.append(numpy.column_stack([x[keep], y[keep]]))
    return numpy.concatenate(got)[:count]

  def band(sign, count) :
    x = rng.uniform(0, 2*math.pi, count)
    y = numpy.sin(level * x) + sign * rng.uniform(0, _BAND_WIDTH, count)
    return numpy.column_stack([x, y])

  nb = int(round(_BAND_FRACTION * n))
  c0 = numpy.concatenate([side(1, n - nb), band(1, nb)])
  c1 = numpy.concatenate([side(-1, n - nb), band(-1, nb)])
  return c0, c1

def generate(spec) :
  """ Draw the data set described by spec.

  The same spec (including seed) always gives the same matrix.

  :param spec: generator parameters
  :type spec: GeneratorSpec
  :returns: 2 x (2 samplesPerClass) LabeledMatrix
  """

  rng = numpy.random.default_rng(spec.seed)
  n, sd = spec.samplesPerClass, spec.noise

  if spec.shape == "boundary" :
    c0, c1 = _boundary(rng, n, spec.level)
  else :
    make = {"blobs" : _blobs, "moons" : _moons, "circles" : _circles,
            "xor" : _xor, "spirals" : _spirals, "random" : _random}[spec.shape]
    c0, c1 = make(rng, n, sd)

  pts = numpy.concatenate([c0, c1])
  labels = numpy.repeat([0, 1], n)
  return LabeledMatrix.fromSamples(pts, labels, 2, meta = spec.asDict())

def derivedSeed(seed, *path) :
  """ A child seed for (seed, i, j, ...), independent of evaluation order."""
  return numpy.random.SeedSequence([int(seed)] + [int(x) for x in path])

def injectNoiseSNR(lm, snrDb, seed, allocation = "equal") :
  """ Add white Gaussian noise at the given signal to noise ratio (dB).

  Signal power is the mean, over samples, of the squared norm of a sample
  (the sum of per-feature powers). The noise power N satisfies
  10 log10(P/N) = snrDb and is split across features either equally or in
  proportion to each feature's power.

  :param lm: labeled matrix (labels are kept)
  :param snrDb: signal to noise ratio in dB; inf returns the data unchanged
  :param seed: integer, SeedSequence or numpy Generator
  :param allocation: "equal" or "proportional"
  """

  x = lm.data
  d = x.shape[0]
  pd = numpy.mean(x**2, axis = 1)
  power = pd.sum()
  if power <= 0 :
    raise ZeroSignalPower("data has zero power")

  if math.isinf(snrDb) and snrDb > 0 :
    return lm.withData(x)

  noisePower = power / 10**(snrDb / 10)
  if allocation == "equal" :
    var = numpy.full(d, noisePower / d)
  elif allocation == "proportional" :
    var = noisePower * pd / power
  else :
    raise ValueError("unknown noise allocation " + str(allocation))

  rng = seed if isinstance(seed, numpy.random.Generator) else \
        numpy.random.default_rng(seed)
  noise = rng.standard_normal(x.shape) * numpy.sqrt(var)[:, numpy.newaxis]
  meta = dict(lm.meta)
  meta["snrDb"] = float(snrDb)
  return lm.withData(x + noise, meta)

class SnrTaskSet(object) :
  """ Noisy test sets derived from one training set.

  For every SNR level there are 'trials' independently seeded noisy copies
  of the training data. Copies are drawn on demand; the copy of
  (level i, trial t) depends only on (seed, i, t).
  """

  def __init__(self, train, levels, trials, seed, allocation = "equal") :
    self.train = train
    self.levels = [float(x) for x in levels]
    self.trials = int(trials)
    self.seed = int(seed)
    self.allocation = allocation
    assert all(a < b for a,b in zip(self.levels, self.levels[1:]))

  def __len__(self) :
    return len(self.levels)

  def __repr__(self) :
    return "SnrTaskSet(%d levels %g..%g dB, %d trials)" % \
           (len(self.levels), self.levels[0], self.levels[-1], self.trials)

  def test(self, i, t) :
    """ Noisy copy number t of level i."""
    assert 0 <= i < len(self.levels) and 0 <= t < self.trials
    return injectNoiseSNR(self.train, self.levels[i],
                          derivedSeed(self.seed, i, t), self.allocation)

  @property
  def tasks(self) :
    """ List of (snrDb, [test copies])."""
    return [(s, [self.test(i, t) for t in range(self.trials)])
            for i, s in enumerate(self.levels)]

  def asDict(self) :
    return {"levels" : self.levels, "trials" : self.trials, "seed" : self.seed,
            "allocation" : self.allocation}

def buildSNRTaskSet(train, snrLo = 5.0, snrHi = 20.0, nTasks = 16, trials = 20,
                    seed = 0, allocation = "equal") :
  """ Task set with nTasks SNR levels evenly spaced over [snrLo,snrHi].

  >>> from sepy.labeledMatrix import LabeledMatrix
  >>> ts = buildSNRTaskSet(LabeledMatrix([[1., 2., 3., 4.]], [0, 0, 1, 1]), 5, 20, 16, 1)
  >>> ts.levels[:3], ts.levels[-1]
  ([5.0, 6.0, 7.0], 20.0)
  """

  if int(nTasks) < 2 :
    raise InvalidRange("need at least two SNR levels (got %s)" % nTasks)
  if not snrLo < snrHi :
    raise InvalidRange("empty SNR range [%g,%g]" % (snrLo, snrHi))
  if int(trials) < 1 :
    raise InvalidRange("need at least one trial (got %s)" % trials)

  levels = numpy.linspace(snrLo, snrHi, int(nTasks))
  _log.info("%d SNR levels %g..%g dB, %d trials", nTasks, snrLo, snrHi, trials)
  return SnrTaskSet(train, levels, trials, seed, allocation)
