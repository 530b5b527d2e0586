import unittest, tempfile, shutil, os.path, json

import numpy

from sepy.commands import main
from sepy.layerProbe import FeatureDump, saveDump

class TestCommandLine(unittest.TestCase) :
  def setUp(self) :
    self.dir = tempfile.mkdtemp()

  def tearDown(self) :
    shutil.rmtree(self.dir)

  def path(self, name) :
    return os.path.join(self.dir, name)

  def sepy(self, *argv) :
    return main([str(a) for a in argv])

  def load(self, name) :
    with open(self.path(name)) as f :
      return json.load(f)

  def testMeasure(self) :
    self.assertEqual(self.sepy("measure", "--shape", "moons", "--samples", 60,
                              "-o", self.path("m.json")), 0)
    d = self.load("m.json")
    self.assertEqual(sorted(d["values"]), ["density", "dsi", "lsc", "n2", "rs"])
    self.assertEqual(d["manifest"]["subcommand"], "measure")
    self.assertFalse("started" in d["manifest"])
    self.assertEqual(d["samples"], 120)

  def testGenerateThenMeasure(self) :
    self.assertEqual(self.sepy("generate", "--shape", "xor", "--samples", 40,
                              "--seed", 3, "-o", self.path("xor.csv")), 0)
    self.assertEqual(self.sepy("preprocess", "--input", self.path("xor.csv"),
                              "--method", "minmax", "-o", self.path("xor01.csv")), 0)
    self.assertEqual(self.sepy("measure", "--input", self.path("xor01.csv"),
                              "--measures", "rs,n2", "--stamp",
                              "-o", self.path("m.json")), 0)
    d = self.load("m.json")
    self.assertEqual(sorted(d["values"]), ["n2", "rs"])
    self.assertTrue(self.path("xor01.csv") in d["manifest"]["inputs"])
    self.assertTrue("wallClock" in d["manifest"])

  def testUsageErrors(self) :
    self.assertEqual(self.sepy("measure", "-o", self.path("x.json")), 2)
    self.assertEqual(self.sepy("measure", "--shape", "moons", "--input", "a.csv"), 2)
    self.assertEqual(self.sepy("measure", "--shape", "moons", "--paper-defaults",
                              "--epsilon", 1.0), 2)
    self.assertEqual(self.sepy("measure", "--shape", "moons", "--measures", "rs,fisher"), 2)
    self.assertEqual(self.sepy("generate", "--shape", "moons"), 2)
    self.assertEqual(self.sepy("measure", "--shape", "teapot"), 2)
    self.assertEqual(self.sepy("fit", self.path("none.json"), "--c-grid", "1,2"), 2)
    self.assertEqual(self.sepy("fit", self.path("none.json"), "--c-grid", "10,1,5"), 2)
    self.assertEqual(self.sepy("fit", self.path("none.json"), "--c-values", "1,x"), 2)
    self.assertEqual(self.sepy("fit", self.path("none.json"), "--heldout-alpha", ","), 2)
    self.assertFalse(os.path.exists(self.path("x.json")))

  def testDataErrors(self) :
    self.assertEqual(self.sepy("measure", "--input", self.path("missing.csv")), 1)
    self.assertEqual(self.sepy("sweep", "--shape", "blobs", "--samples", 20,
                              "--trials", 0, "-o", self.path("s.json")), 1)
    self.assertEqual(self.sepy("measure", "--shape", "blobs", "--epsilon", -1), 1)
    with open(self.path("notjson.json"), "w") as f :
      f.write("snrDb,acc\n5,0.5\n")
    self.assertEqual(self.sepy("fit", self.path("notjson.json")), 1)
    with open(self.path("list.json"), "w") as f :
      f.write("[1, 2]\n")
    self.assertEqual(self.sepy("fit", self.path("list.json")), 1)
    self.assertEqual(self.sepy("measure", "--shape", "moons", "--samples", 20,
                              "--max-samples", 10, "-o", self.path("m.json")), 0)
    d = self.load("m.json")
    self.assertEqual(sorted(d["values"]), ["rs"])
    self.assertTrue("TooManySamples" in d["errors"]["density"])

  def sweep(self, name, *extra) :
    return self.sepy("sweep", "--shape", "moons", "--samples", 30, "--sd", 0.3,
                    "--levels", 4, "--trials", 2, "--classifiers", "knn,linearsvm",
                    "--epochs", 50, "--seed", 5, "-o", self.path(name), *extra)

  def testSweepIsReproducible(self) :
    self.assertEqual(self.sweep("a.json", "--csv", self.path("a")), 0)
    self.assertEqual(self.sweep("b.json"), 0)
    with open(self.path("a.json"), "rb") as f :
      a = f.read()
    with open(self.path("b.json"), "rb") as f :
      b = f.read()
    self.assertEqual(a, b)

    d = json.loads(a.decode("utf-8"))
    self.assertEqual(len(d["levels"]), 4)
    self.assertEqual(sorted(d["accuracy"]), ["knn5", "linearsvm(C=1)"])
    self.assertTrue(os.path.exists(self.path("a-accuracy.csv")))
    with open(self.path("a-rs.csv")) as f :
      lines = f.read().splitlines()
    self.assertTrue(lines[0].startswith("#"))
    self.assertEqual(lines[1], "snrDb,rsMean,rsStd")
    self.assertEqual(len(lines), 6)

  def testFit(self) :
    self.assertEqual(self.sweep("s.json"), 0)
    self.assertEqual(self.sepy("fit", self.path("s.json"), "--c-values",
                              "0.001,0.01,0.1,1,10", "--epochs", 40,
                              "--heldout-alpha", "0.0001,0.1",
                              "-o", self.path("f.json"), "--csv", self.path("f")), 0)
    d = self.load("f.json")
    self.assertEqual(len(d["theta"]), 5)
    self.assertEqual(len(d["curves"]["rs"]), 4)
    self.assertEqual(sorted(d["abilities"]), ["logreg(alpha=0.0001)", "logreg(alpha=0.1)"])
    self.assertTrue(os.path.exists(self.path("f-curveparams.csv")))

  def testProbe(self) :
    rng = numpy.random.default_rng(0)
    labels = numpy.repeat([0, 1], 10)
    records = [("layer%d" % i, e, rng.normal(0, 1, (20, 4)) + e * i * labels[:, None])
               for e in (1, 2) for i in (1, 2)]
    saveDump(FeatureDump(records, labels, "split=train"), self.path("d.fsep"))
    self.assertEqual(self.sepy("probe", self.path("d.fsep"), "-o", self.path("p.json"),
                              "--csv", self.path("p")), 0)
    d = self.load("p.json")
    self.assertEqual(d["layers"], ["layer1", "layer2"])
    self.assertEqual(d["split"], "train")
    self.assertTrue(os.path.exists(self.path("p-layers.csv")))

    with open(self.path("bad.fsep"), "wb") as f :
      f.write(b"XXXX")
    self.assertEqual(self.sepy("probe", self.path("bad.fsep")), 1)

  def twice(self, name, *argv) :
    out = []
    for i in (1, 2) :
      path = self.path("%s%d.json" % (name, i))
      self.assertEqual(self.sepy(*(argv + ("-o", path))), 0)
      with open(path, "rb") as f :
        out.append(f.read())
    self.assertEqual(out[0], out[1], name)

  def testEveryCommandIsReproducible(self) :
    self.twice("measure", "measure", "--shape", "spirals", "--samples", 40, "--seed", 2)
    self.assertEqual(self.sweep("s.json"), 0)
    self.twice("fit", "fit", self.path("s.json"), "--c-values", "0.01,0.1,1,10",
               "--epochs", 30)
    rng = numpy.random.default_rng(1)
    labels = numpy.repeat([0, 1], 8)
    records = [("layer%d" % i, 1, rng.normal(0, 1, (16, 3)) + i * labels[:, None])
               for i in (1, 2)]
    saveDump(FeatureDump(records, labels), self.path("d.fsep"))
    self.twice("probe", "probe", self.path("d.fsep"), "--max-elements", 20)
    self.twice("study", "study", "boundary", "--samples", 40, "--seeds", 1,
               "--measures", "rs,n2")

  def testStudy(self) :
    self.assertEqual(self.sepy("study", "boundary", "--samples", 50, "--seeds", 1,
                              "--measures", "rs", "-o", self.path("b.json")), 0)
    self.assertEqual(len(self.load("b.json")["rows"]), 4)
    self.assertEqual(self.sepy("study", "overlap", "--samples", 20, "--seeds", 1,
                              "--measures", "density", "-o", self.path("o.json")), 0)
    d = self.load("o.json")
    self.assertEqual(len(d["rows"]), 9)
    self.assertFalse(d["manifest"]["config"]["measures"]["densityNormalize"])

if __name__ == '__main__':
  unittest.main()
