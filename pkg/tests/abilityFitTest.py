import unittest

import numpy

from sepy.abilityFit import (sigmoid, SigmoidParams, fitSigmoid, TaskCurveSet,
                             fitDifficultyPolynomials, estimateAbility,
                             buildTaskCurves, throttledSpecs, taskAccuracies)
from sepy.classifiers import ClassifierSpec, train
from sepy.generators import GeneratorSpec, generate, buildSNRTaskSet
from sepy.errors import InvalidRange, RankDeficient, AllSaturated

TRUE = dict(u = 0.95, l = 0.30, a = 8.0, b = 0.5)

def curveSet(rs = (0.2, 0.35, 0.5, 0.65, 0.8)) :
  """ Curves with u=0.95, l=0.3, slope a(rs) = 6 and shift b(rs) = 0.3+0.4 (rs-0.2)/0.6."""
  rs = numpy.asarray(rs)
  h = [6.0, 0.0, 0.0]
  p = [0.3 - 0.4 * 0.2 / 0.6, 0.4 / 0.6, 0.0]
  params = [SigmoidParams(0.95, 0.30, 6.0, numpy.polyval(p[::-1], r)) for r in rs]
  return TaskCurveSet(rs, params, h, p)

class TestSigmoidFit(unittest.TestCase) :
  def setUp(self) :
    self.theta = numpy.linspace(0, 1, 20)

  def testExactRecovery(self) :
    p = sigmoid(self.theta, **TRUE)
    fit = fitSigmoid(self.theta, p)
    self.assertTrue(fit.converged)
    self.assertFalse(fit.degenerate)
    for name, v in TRUE.items() :
      self.assertAlmostEqual(getattr(fit, name), v, delta = 1e-4)
    self.assertLess(fit.rmse, 1e-6)

  def testNoisyRecovery(self) :
    rng = numpy.random.default_rng(0)
    clean = sigmoid(self.theta, **TRUE)
    fits = [fitSigmoid(self.theta, numpy.clip(clean + rng.normal(0, 0.02, 20), 0, 1))
            for _ in range(100)]
    for name, v in TRUE.items() :
      median = numpy.median([getattr(f, name) for f in fits])
      self.assertAlmostEqual(median, v, delta = 0.1 * v)

  def testShift(self) :
    p = sigmoid(self.theta, **TRUE)
    a = fitSigmoid(self.theta, p)
    b = fitSigmoid(self.theta + 0.25, p)
    self.assertAlmostEqual(b.b, a.b + 0.25, delta = 1e-6)
    self.assertAlmostEqual(b.a, a.a, delta = 1e-4)

  def testDegenerate(self) :
    fit = fitSigmoid(self.theta, numpy.full(20, 0.7))
    self.assertTrue(fit.degenerate)
    self.assertEqual((fit.u, fit.l), (0.7, 0.7))
    self.assertTrue(numpy.allclose(fit(self.theta), 0.7))

  def testBadInput(self) :
    self.assertRaises(InvalidRange, fitSigmoid, [0, 0.5, 1], [0.1, 0.5, 0.9])
    self.assertRaises(InvalidRange, fitSigmoid, [0, 0.3, 0.6, 1], [0.1, 0.5, 0.9, 1.1])
    self.assertRaises(InvalidRange, fitSigmoid, [0.5] * 4, [0.1, 0.5, 0.9, 1.0])

  def testDictRoundTrip(self) :
    fit = fitSigmoid(self.theta, sigmoid(self.theta, **TRUE))
    self.assertEqual(SigmoidParams.fromDict(fit.asDict()).asDict(), fit.asDict())

class TestDifficulty(unittest.TestCase) :
  def testTrends(self) :
    # harder tasks (higher rs): later shift and flatter curve
    theta = numpy.linspace(0, 1, 20)
    rs = numpy.linspace(0.1, 0.9, 9)
    fitted = [(r, fitSigmoid(theta, sigmoid(theta, 0.95, 0.30, 10 - 6 * r, 0.2 + 0.6 * r)))
              for r in rs]
    curves = fitDifficultyPolynomials(fitted)
    trends = curves.trends()
    self.assertGreaterEqual(trends["shift"], 0.8)
    self.assertLessEqual(trends["slope"], -0.8)

    flipped = fitDifficultyPolynomials([(1 - r, c) for r, c in fitted])
    self.assertLessEqual(flipped.trends()["shift"], -0.8)

  def testExactQuadratics(self) :
    rs = [0.2, 0.5, 0.8]
    a = lambda r : 1 + 2 * r + 3 * r**2
    b = lambda r : -1 + 0.5 * r + 4 * r**2
    curves = fitDifficultyPolynomials([(r, SigmoidParams(0.9, 0.1, a(r), b(r)))
                                       for r in rs])
    self.assertTrue(numpy.allclose(curves.h, [1, 2, 3], atol = 1e-9))
    self.assertTrue(numpy.allclose(curves.p, [-1, 0.5, 4], atol = 1e-9))

  def testRankDeficient(self) :
    c = SigmoidParams(0.9, 0.1, 5, 0.5)
    self.assertRaises(RankDeficient, fitDifficultyPolynomials, [(0.2, c), (0.5, c)])
    self.assertRaises(RankDeficient, fitDifficultyPolynomials,
                      [(0.2, c), (0.2, c), (0.5, c)])

  def testTaskOrder(self) :
    c = [SigmoidParams(0.9, 0.1, 5, b) for b in (0.1, 0.2, 0.3, 0.4)]
    curves = fitDifficultyPolynomials(list(zip([0.7, 0.1, 0.4, 0.9], c)))
    self.assertEqual(list(curves.rs), [0.1, 0.4, 0.7, 0.9])
    self.assertEqual(list(curves.taskIndex), [1, 2, 0, 3])
    self.assertEqual([x.b for x in curves.params], [0.2, 0.3, 0.1, 0.4])
    back = TaskCurveSet.fromDict(curves.asDict())
    self.assertTrue(numpy.array_equal(back.model([0.3, 0.6]), curves.model([0.3, 0.6])))

class TestAbility(unittest.TestCase) :
  def testInverse(self) :
    curves = curveSet()
    for theta in (0.2, 0.5, 0.6, 0.8) :
      acc = curves.model(theta)[:, 0]
      est = estimateAbility(curves, acc)
      self.assertAlmostEqual(est.theta, theta, delta = 0.02)
      self.assertAlmostEqual(est.thetaAll, theta, delta = 0.02)
      self.assertTrue(numpy.all(numpy.abs(est.residuals) < 1e-3))

  def testSaturatedTasksIgnored(self) :
    curves = curveSet()
    acc = curves.model(0.6)[:, 0]
    acc[0] = 0.95
    est = estimateAbility(curves, acc)
    self.assertTrue(est.saturated[0])
    self.assertFalse(est.saturated[1:].any())
    self.assertAlmostEqual(est.theta, 0.6, delta = 0.02)

  def testAllSaturated(self) :
    curves = curveSet()
    self.assertRaises(AllSaturated, estimateAbility, curves, numpy.full(5, 0.95))
    self.assertRaises(InvalidRange, estimateAbility, curves, numpy.full(4, 0.5))

  def testSpreadOverTaskSubsets(self) :
    curves = curveSet(numpy.linspace(0.1, 0.9, 9))
    rng = numpy.random.default_rng(3)
    acc = curves.model(0.55)[:, 0] + rng.normal(0, 0.02, 9)
    thetas = []
    for first in range(5) :
      part = list(range(first, first + 5))
      thetas.append(estimateAbility(curves.subset(part), acc[part]).theta)
    self.assertLess(numpy.std(thetas), 0.1)
    self.assertTrue(all(abs(t - 0.55) < 0.1 for t in thetas), thetas)

  def testSubset(self) :
    curves = curveSet()
    part = curves.subset([1, 3])
    self.assertEqual(list(part.rs), [0.35, 0.65])
    self.assertTrue(numpy.allclose(part.model(0.4)[:, 0], curves.model(0.4)[[1, 3], 0]))

class TestTaskCurves(unittest.TestCase) :
  def setUp(self) :
    self.train = generate(GeneratorSpec("blobs", 40, seed = 0))
    self.tasks = buildSNRTaskSet(self.train, 10, 20, 3, 2, seed = 0)

  def testThrottledSpecs(self) :
    specs = throttledSpecs([10, 0.1, 1, 100], epochs = 100)
    self.assertEqual([s.cReg for s in specs], [0.1, 1, 10, 100])
    self.assertEqual([s.epochs for s in specs], [25, 50, 75, 100])

  def testForcedOrdering(self) :
    strong = ClassifierSpec("linearsvm", epochs = 200)
    # K equal to the training set size votes the class sizes, always a tie
    crippled = ClassifierSpec("knn", kNeighbors = 80)
    pAcc, theta, specs = buildTaskCurves(self.train, [], self.tasks,
                                         specs = [strong, crippled])
    self.assertEqual(pAcc.shape, (3, 2))
    self.assertEqual(list(theta), [0.0, 1.0])
    self.assertEqual([s.kind for s in specs], ["knn", "linearsvm"])
    self.assertTrue(numpy.all(pAcc[:, 0] == 0.5))
    expected = taskAccuracies(train(strong, self.train), self.tasks)
    self.assertTrue(numpy.array_equal(pAcc[:, 1], expected))

  def testGrid(self) :
    pAcc, theta, specs = buildTaskCurves(self.train, [0.01, 0.1, 1, 10], self.tasks,
                                         epochs = 40)
    self.assertEqual(pAcc.shape, (3, 4))
    self.assertTrue(numpy.all(numpy.diff(pAcc.max(axis = 0)) >= 0))
    self.assertRaises(InvalidRange, buildTaskCurves, self.train, [0.1, 1, 10],
                      self.tasks)

if __name__ == '__main__':
  unittest.main()
