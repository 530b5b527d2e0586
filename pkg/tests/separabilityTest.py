import unittest, doctest
from unittest import mock

import numpy

from sepy import separability
from sepy.separability import (DistanceCache, MeasureConfig, ksStatistic,
                               rsMeasure, dsiMeasure, n2Measure, lscMeasure,
                               densityMeasure, measureAll)
from sepy.labeledMatrix import LabeledMatrix
from sepy.codingRate import CodingConfig
from sepy.generators import GeneratorSpec, generate
from sepy.errors import DegenerateClass, TooManySamples, ZeroTotalRate

def dist(a, b) :
  return numpy.sqrt(numpy.sum((a - b)**2))

def ksByHand(a, b) :
  a, b = numpy.asarray(a, dtype = float), numpy.asarray(b, dtype = float)
  v = numpy.concatenate([a, b])[:, numpy.newaxis]
  # both distribution functions at every observed value
  fa = (a[numpy.newaxis, :] <= v).mean(axis = 1)
  fb = (b[numpy.newaxis, :] <= v).mean(axis = 1)
  return float(numpy.max(numpy.abs(fa - fb)))

def dsiByHand(pts, labels) :
  ks = []
  for j in sorted(set(labels)) :
    inside = [i for i in range(len(pts)) if labels[i] == j]
    outside = [i for i in range(len(pts)) if labels[i] != j]
    intra = [dist(pts[a], pts[b]) for x, a in enumerate(inside)
             for b in inside[x+1:]]
    inter = [dist(pts[a], pts[b]) for a in inside for b in outside]
    ks.append(ksByHand(intra, inter))
  return 1 - sum(ks) / len(ks)

def nearest(pts, labels, i, same) :
  c = [dist(pts[i], pts[j]) for j in range(len(pts))
       if j != i and (labels[j] == labels[i]) == same]
  return min(c)

def n2ByHand(pts, labels) :
  num = sum(nearest(pts, labels, i, True) for i in range(len(pts)))
  den = sum(nearest(pts, labels, i, False) for i in range(len(pts)))
  if den == 0 :
    return 1.0
  r = num / den
  return 1 - 1 / (1 + r)

def lscByHand(pts, labels) :
  m = len(pts)
  total = 0
  for i in range(m) :
    ne = nearest(pts, labels, i, False)
    total += sum(1 for j in range(m) if j != i and dist(pts[i], pts[j]) < ne)
  return 1 - total / m**2

def densityByHand(pts, threshold, normalize = True) :
  s = pts
  if normalize :
    lo, hi = pts.min(axis = 0), pts.max(axis = 0)
    span = numpy.where(hi > lo, hi - lo, 1.0)
    s = (pts - lo) / span
  m = len(pts)
  edges = sum(1 for i in range(m) for j in range(i + 1, m)
              if dist(s[i], s[j]) < threshold)
  return 1 - 2 * edges / (m * (m - 1))

def randomLabeled(rng, m = 24, d = 3, k = 3, grid = False) :
  # integer points on a small grid have coincident points and tied distances
  pts = rng.integers(0, 4, (m, d)).astype(float) if grid else rng.normal(0, 1, (m, d))
  # at least two samples per class
  labels = numpy.concatenate([numpy.repeat(numpy.arange(k), 2),
                              rng.integers(0, k, m - 2*k)])
  return pts, labels, LabeledMatrix.fromSamples(pts, labels, k)

class TestAgainstBruteForce(unittest.TestCase) :
  def setUp(self) :
    self.rng = numpy.random.default_rng(42)

  def testKs(self) :
    for _ in range(20) :
      a = self.rng.integers(0, 6, 12)
      b = self.rng.integers(0, 6, 7)
      self.assertAlmostEqual(ksStatistic(a, b), ksByHand(list(a), list(b)), places = 12)

  def testMeasures(self) :
    for n in range(200) :
      grid = n % 2 == 1
      m, k = int(self.rng.integers(8, 31)), int(self.rng.integers(2, 4))
      pts, labels, lm = randomLabeled(self.rng, m, int(self.rng.integers(1, 4)), k, grid)
      cache = DistanceCache(lm)
      self.assertAlmostEqual(dsiMeasure(lm, cache), dsiByHand(pts, labels), places = 12)
      self.assertAlmostEqual(n2Measure(lm, cache), n2ByHand(pts, labels), places = 12)
      self.assertAlmostEqual(lscMeasure(lm, cache), lscByHand(pts, labels), places = 12)
      for thr in (0.15, 0.4) :
        self.assertAlmostEqual(densityMeasure(lm, thr), densityByHand(pts, thr),
                               places = 12)
      if grid :
        # threshold equal to the grid step: pairs at distance 1 are not edges
        for thr in (1.0, 1.5) :
          self.assertEqual(densityMeasure(lm, thr, normalize = False, cache = cache),
                           densityByHand(pts, thr, normalize = False))

  def testGridTies(self) :
    pts = numpy.array([[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 0]], dtype = float)
    labels = [0, 0, 1, 1, 1, 0]
    lm = LabeledMatrix.fromSamples(pts, labels)
    self.assertEqual(lscMeasure(lm), lscByHand(pts, labels))
    self.assertAlmostEqual(dsiMeasure(lm), dsiByHand(pts, labels), places = 12)
    self.assertEqual(densityMeasure(lm, 1.0, normalize = False),
                     densityByHand(pts, 1.0, normalize = False))

  def testStreamingMatchesStored(self) :
    pts, labels, lm = randomLabeled(self.rng, m = 40)
    stored = measureAll(lm)
    streamed = measureAll(lm, MeasureConfig(streaming = True, maxSamples = 10))
    for name in stored.values :
      self.assertAlmostEqual(stored.values[name], streamed.values[name], places = 12)

  def testTooManySamples(self) :
    pts, labels, lm = randomLabeled(self.rng, m = 30)
    self.assertRaises(TooManySamples, DistanceCache, lm, maxSamples = 10)
    r = measureAll(lm, MeasureConfig(maxSamples = 10))
    self.assertEqual(sorted(r.values), ["rs"])
    for name in ("dsi", "n2", "lsc", "density") :
      self.assertTrue("TooManySamples" in r.errors[name], name)
    r = measureAll(lm, MeasureConfig(maxSamples = 30))
    self.assertEqual(r.errors, {})

  def testLimitReachesEveryCache(self) :
    pts, labels, lm = randomLabeled(self.rng, m = 30)
    for normalize in (True, False) :
      config = MeasureConfig(densityNormalize = normalize, maxSamples = 50000)
      with mock.patch.object(separability, "DistanceCache",
                             wraps = DistanceCache) as made :
        r = measureAll(lm, config)
      self.assertEqual(r.errors, {})
      self.assertTrue(made.call_count >= 1)
      for args, kwargs in made.call_args_list :
        limit = kwargs["maxSamples"] if "maxSamples" in kwargs else args[2]
        self.assertEqual(limit, 50000)

class TestRs(unittest.TestCase) :
  def testInvariances(self) :
    rng = numpy.random.default_rng(5)
    lm = LabeledMatrix.fromSamples(rng.normal(0, 1, (60, 4)) + [[1, 0, 0, 0]],
                                   numpy.repeat([0, 1, 2], 20))
    rs = rsMeasure(lm)
    self.assertTrue(0 < rs <= 1)
    self.assertAlmostEqual(rsMeasure(lm.permuted(rng.permutation(60))), rs, places = 10)
    self.assertAlmostEqual(rsMeasure(lm.relabeled([2, 0, 1])), rs, places = 10)

  def testZeroTotalRate(self) :
    lm = LabeledMatrix(numpy.zeros((2, 4)), [0, 0, 1, 1])
    self.assertRaises(ZeroTotalRate, rsMeasure, lm)

  def testSingleClassIsOne(self) :
    lm = LabeledMatrix(numpy.random.default_rng(0).normal(0, 1, (2, 30)), [0] * 30)
    self.assertAlmostEqual(rsMeasure(lm), 1.0, places = 9)
    r = measureAll(lm)
    self.assertAlmostEqual(r.rs, 1.0, places = 9)
    for name in ("dsi", "n2", "lsc") :
      self.assertTrue("DegenerateClass" in r.errors[name])
    self.assertTrue("density" in r.values)

  def testSeparatedBlobsBelowOverlapping(self) :
    far = generate(GeneratorSpec("blobs", 300, 1.0, seed = 1))
    near = generate(GeneratorSpec("blobs", 300, 6.0, seed = 1))
    self.assertLess(rsMeasure(far), rsMeasure(near))

class TestRigidMotion(unittest.TestCase) :
  def testRotateAndTranslate(self) :
    rng = numpy.random.default_rng(11)
    for _ in range(5) :
      pts, labels, lm = randomLabeled(rng, m = 40, d = 3, k = 3)
      q = numpy.linalg.qr(rng.normal(0, 1, (3, 3)))[0]
      moved = lm.withData(q.dot(lm.data) + rng.normal(0, 5, (3, 1)))
      rotated = lm.withData(q.dot(lm.data))
      for f in (dsiMeasure, n2Measure, lscMeasure) :
        self.assertAlmostEqual(f(moved), f(lm), places = 9)
      self.assertAlmostEqual(rsMeasure(rotated), rsMeasure(lm), places = 9)

class TestEdgeCases(unittest.TestCase) :
  def testSingletonClass(self) :
    pts = numpy.array([[0, 0], [0, 1], [1, 0], [5, 5]], dtype = float)
    lm = LabeledMatrix.fromSamples(pts, [0, 0, 0, 1])
    self.assertRaises(DegenerateClass, dsiMeasure, lm)
    self.assertRaises(DegenerateClass, n2Measure, lm)
    # nearest point of any class is always defined
    self.assertTrue(0 <= n2Measure(lm, sameClass = False) <= 1)
    r = measureAll(lm)
    self.assertEqual(sorted(r.errors), ["dsi", "n2"])
    self.assertEqual(sorted(r.values), ["density", "lsc", "rs"])

  def testCoincidentEnemies(self) :
    pts = numpy.array([[0, 0], [0, 0], [1, 1], [1, 1]], dtype = float)
    # every sample sits on a sample of the other class
    lm = LabeledMatrix.fromSamples(pts, [0, 1, 0, 1])
    self.assertEqual(n2Measure(lm), 1.0)
    self.assertEqual(lscMeasure(lm), 1.0)

  def testDensityExtremes(self) :
    pts = numpy.array([[0, 0], [1, 0], [0, 1], [1, 1]], dtype = float)
    lm = LabeledMatrix.fromSamples(pts, [0, 1, 1, 0])
    self.assertEqual(densityMeasure(lm, 0.15), 1.0)
    self.assertEqual(densityMeasure(lm, 2.0), 0.0)

  def testMeasureSelection(self) :
    lm = generate(GeneratorSpec("moons", 50, seed = 3))
    r = measureAll(lm, MeasureConfig(measures = ("n2", "rs")), datasetId = "moons")
    self.assertEqual(sorted(r.values), ["n2", "rs"])
    d = r.asDict()
    self.assertEqual(d["dataset"], "moons")
    self.assertEqual(d["config"]["measures"], ["rs", "n2"])
    self.assertRaises(ValueError, MeasureConfig, measures = ("rs", "fisher"))

  def testCodingEcho(self) :
    r = measureAll(generate(GeneratorSpec("xor", 20, seed = 0)),
                   MeasureConfig(CodingConfig(1.0)))
    self.assertEqual(r.config["epsilon"], 1.0)

def load_tests(loader, tests, ignore) :
  tests.addTests(doctest.DocTestSuite(separability))
  return tests

if __name__ == '__main__':
  unittest.main()
