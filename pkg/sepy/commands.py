## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
=============
Command Line
=============

``sepy <subcommand> [options]``

  ``measure``     separability measures of a data file or a generated data set
  ``generate``    write a generated data set
  ``preprocess``  write a preprocessed copy of a data file
  ``sweep``       accuracy and rs over SNR task sets
  ``fit``         task curves and classifier abilities from a sweep
  ``probe``       rs of the layers of a network feature dump
  ``study``       the synthetic measure studies

Reports are JSON (stdout, or ``-o``); ``--csv PREFIX`` also writes plot data
files ``PREFIX-<name>.csv``. Exit code 0 on success, 1 on a data or numeric
error, 2 on a usage error.
"""

from __future__ import division

import argparse, json, logging, sys

import numpy

from . import __version__
from .errors import SepyError, DataError, UsageError
from .codingRate import CodingConfig, DEFAULT_EPSILON, NON_ZERO_MEAN, ZERO_MEAN
from .separability import (MeasureConfig, measureAll, ALL_MEASURES,
                           DEFAULT_DENSITY_THRESHOLD, MAX_CACHED_SAMPLES)
from .generators import SHAPES, GeneratorSpec, generate, buildSNRTaskSet, SnrTaskSet
from .preprocess import METHODS, preprocess
from .dataio import loadDelimited, saveDelimited
from .classifiers import KINDS, ClassifierSpec, train
from .snrSweep import snrSweep
from .abilityFit import (DEFAULT_C_GRID, buildTaskCurves, fitSigmoid,
                         fitDifficultyPolynomials, estimateAbility, taskAccuracies)
from .layerProbe import loadDump, probe, DEFAULT_MAX_ELEMENTS
from . import studies
from .reports import RunManifest, writeJson, writeCsv
from .genericutils import tohms

__all__ = ["main", "cmdMeasure", "cmdGenerate", "cmdPreprocess", "cmdSweep",
           "cmdFit", "cmdProbe", "cmdStudy", "REFERENCE_DEFAULTS"]

_log = logging.getLogger(__name__)

# values pinned by --paper-defaults (also the defaults of the options)
REFERENCE_DEFAULTS = {"epsilon" : DEFAULT_EPSILON, "variant" : NON_ZERO_MEAN,
                      "density_threshold" : DEFAULT_DENSITY_THRESHOLD,
                      "snr_lo" : 5.0, "snr_hi" : 20.0, "levels" : 16, "trials" : 20}

def _floats(s, option, count = None) :
  try :
    v = [float(x) for x in s.split(',') if x.strip()]
  except ValueError :
    raise UsageError("--%s: not a comma separated list of numbers: %s" % (option, s))
  if not v or (count is not None and len(v) != count) :
    raise UsageError("--%s needs %s value(s), got '%s'" % (option, count or "one or more", s))
  return v

def _settle(args) :
  """ Fill unset options from REFERENCE_DEFAULTS. With --paper-defaults an
  explicit different value is a usage error."""

  for name, value in REFERENCE_DEFAULTS.items() :
    if not hasattr(args, name) :
      continue
    given = getattr(args, name)
    if given is None :
      setattr(args, name, value)
    elif getattr(args, "paper_defaults", False) and given != value :
      raise UsageError("--%s %s conflicts with --paper-defaults" %
                       (name.replace('_', '-'), given))

def _coding(args) :
  return CodingConfig(args.epsilon, args.variant)

def _measureConfig(args) :
  measures = args.measures.split(',') if args.measures else ALL_MEASURES
  unknown = [m for m in measures if m not in ALL_MEASURES]
  if unknown :
    raise UsageError("unknown measure(s) " + ",".join(unknown))
  if not args.density_threshold > 0 :
    raise UsageError("--density-threshold must be positive")
  return MeasureConfig(_coding(args), measures, args.density_threshold,
                       not args.density_raw, not args.n2_any, args.streaming,
                       args.max_samples, args.rs_preprocess)

# data sources

def _dataDescriptor(args) :
  if (args.input is None) == (args.shape is None) :
    raise UsageError("give exactly one of --input and --shape")
  if args.input is not None :
    if args.sd is not None or args.level is not None :
      raise UsageError("--sd/--level apply to generated data only")
    return {"input" : args.input, "labelCol" : args.label_col,
            "delimiter" : args.delimiter, "preprocess" : args.preprocess}
  spec = GeneratorSpec(args.shape, args.samples, args.sd,
                       args.level if args.level is not None else 1, args.seed)
  d = spec.asDict()
  d["level"] = spec.level
  d["preprocess"] = args.preprocess
  return d

def _dataFromDescriptor(d) :
  if "input" in d :
    lm = loadDelimited(d["input"], d["labelCol"], d["delimiter"])
  else :
    lm = generate(GeneratorSpec(d["shape"], d["samplesPerClass"], d["sd"],
                                d.get("level", 1), d["seed"]))
  if d.get("preprocess") :
    lm = preprocess(lm, d["preprocess"])
  return lm

def _inputs(d) :
  return [d["input"]] if "input" in d else []

def _csv(args, name, header, rows, comment = None) :
  if args.csv :
    writeCsv("%s-%s.csv" % (args.csv, name), header, rows, comment)

# subcommands

def cmdMeasure(args) :
  """ Measures of one data set."""

  desc = _dataDescriptor(args)
  config = _measureConfig(args)
  manifest = RunManifest("measure", {"data" : desc, "measures" : config.asDict()},
                         args.seed, _inputs(desc), args.stamp)
  lm = _dataFromDescriptor(desc)
  report = measureAll(lm, config, datasetId = desc.get("input") or desc["shape"],
                      timestamp = manifest.started if args.stamp else None)
  manifest.finish()
  d = report.asDict()
  d["classes"] = lm.k
  d["samples"] = lm.nSamples
  return d, manifest

def cmdGenerate(args) :
  """ Generate a data set file."""

  if args.output in (None, '-') :
    raise UsageError("generate needs an output file (-o)")
  spec = GeneratorSpec(args.shape, args.samples, args.sd,
                       args.level if args.level is not None else 1, args.seed)
  lm = generate(spec)
  if args.preprocess :
    lm = preprocess(lm, args.preprocess)
  saveDelimited(lm, args.output)
  return None, None

def cmdPreprocess(args) :
  """ Preprocess a data file."""

  if args.output in (None, '-') :
    raise UsageError("preprocess needs an output file (-o)")
  lm = loadDelimited(args.input, args.label_col, args.delimiter)
  saveDelimited(preprocess(lm, args.method), args.output)
  return None, None

def _classifierSpecs(args) :
  kinds = args.classifiers.split(',')
  bad = [k for k in kinds if k not in KINDS]
  if bad :
    raise UsageError("unknown classifier(s) " + ",".join(bad))
  return [ClassifierSpec(k, kNeighbors = args.k, cReg = args.C,
                         alphaReg = args.alpha, epochs = args.epochs,
                         seed = args.seed) for k in kinds]

def cmdSweep(args) :
  """ Accuracy and rs over an SNR task set."""

  desc = _dataDescriptor(args)
  specs = _classifierSpecs(args)
  coding = _coding(args)
  config = {"data" : desc, "classifiers" : [s.asDict() for s in specs],
            "coding" : coding.asDict(), "snrLo" : args.snr_lo,
            "snrHi" : args.snr_hi, "levels" : args.levels,
            "trials" : args.trials, "allocation" : args.allocation}
  manifest = RunManifest("sweep", config, args.seed, _inputs(desc), args.stamp)

  lm = _dataFromDescriptor(desc)
  taskset = buildSNRTaskSet(lm, args.snr_lo, args.snr_hi, args.levels,
                            args.trials, args.seed, args.allocation)
  result = snrSweep(lm, taskset, specs, coding)
  manifest.finish()

  names = result.names
  _csv(args, "accuracy", ["snrDb"] + sum([[n + ".mean", n + ".std"] for n in names], []),
       [[s] + sum([[float(result.accuracyMean[i, j]), float(result.accuracyStd[i, j])]
                   for j in range(len(names))], [])
        for i, s in enumerate(result.levels)],
       "mean and SD over trials of the accuracy on the noisy copies, per SNR (dB)")
  _csv(args, "rs", ["snrDb", "rsMean", "rsStd"],
       [[s, float(result.rsMean[i]), float(result.rsStd[i])]
        for i, s in enumerate(result.levels)],
       "mean and SD over trials of the rs of the noisy copies, per SNR (dB)")

  d = result.asDict()
  d["data"] = desc
  d["taskset"] = taskset.asDict()
  return d, manifest

def cmdFit(args) :
  """ Task curves from a sweep report, and the ability of held-out logistic
  regressions."""

  if args.c_values :
    cGrid = _floats(args.c_values, "c-values")
  elif args.c_grid :
    lo, hi, k = _floats(args.c_grid, "c-grid", 3)
    if not 0 < lo < hi or k < 1 :
      raise UsageError("--c-grid needs 0 < LO < HI and K >= 1")
    cGrid = list(numpy.logspace(numpy.log10(lo), numpy.log10(hi), int(k)))
  else :
    cGrid = list(DEFAULT_C_GRID)
  alphas = _floats(args.heldout_alpha, "heldout-alpha")

  with open(args.sweep) as f :
    try :
      sweep = json.load(f)
    except ValueError as e :
      raise DataError("%s: not a JSON report (%s)" % (args.sweep, e))
  try :
    desc, ts, rs = sweep["data"], sweep["taskset"], sweep["rs"]["mean"]
    ts = (ts["levels"], ts["trials"], ts["seed"], ts["allocation"])
    lm = _dataFromDescriptor(desc)
  except (KeyError, TypeError) as e :
    raise DataError("%s: not a sweep report (no %s)" % (args.sweep, e))

  config = {"sweep" : sweep.get("manifest", {}).get("config"), "cGrid" : cGrid,
            "epochs" : args.epochs, "heldoutAlpha" : alphas}
  manifest = RunManifest("fit", config, args.seed, [args.sweep] + _inputs(desc),
                         args.stamp)

  taskset = SnrTaskSet(lm, *ts)
  pAcc, theta, specs = buildTaskCurves(lm, cGrid, taskset, args.epochs, args.seed)

  params = [fitSigmoid(theta, row) for row in pAcc]
  curves = fitDifficultyPolynomials(list(zip(rs, params)))

  abilities = dict()
  for alpha in alphas :
    spec = ClassifierSpec("logreg", alphaReg = alpha, seed = args.seed)
    acc = taskAccuracies(train(spec, lm), taskset)
    try :
      est = estimateAbility(curves, acc[curves.taskIndex]).asDict()
    except DataError as e :
      est = {"error" : "%s: %s" % (e.__class__.__name__, e)}
    est["accuracy"] = [float(a) for a in acc[curves.taskIndex]]
    abilities[spec.name] = est
  manifest.finish()

  levels = numpy.asarray(taskset.levels)[curves.taskIndex]
  _csv(args, "taskcurves", ["snrDb", "rs"] + ["theta=%.4g" % t for t in theta],
       [[float(s), float(r)] + [float(a) for a in pAcc[i]]
        for s, r, i in zip(levels, curves.rs, curves.taskIndex)],
       "accuracy of the graded linear SVMs (columns, by ability) on each task")
  _csv(args, "curveparams", ["snrDb", "rs", "u", "l", "a", "b", "aModel", "bModel"],
       [[float(s), float(r), c.u, c.l, c.a, c.b, float(curves.a(r)), float(curves.b(r))]
        for s, r, c in zip(levels, curves.rs, curves.params)],
       "fitted task curve parameters and their quadratic models in rs")

  return {"theta" : [float(t) for t in theta],
          "classifiers" : [s.name for s in specs],
          "accuracy" : pAcc[curves.taskIndex],
          "snrDb" : [float(s) for s in levels],
          "curves" : curves.asDict(), "trends" : curves.trends(),
          "abilities" : abilities}, manifest

def cmdProbe(args) :
  """ rs per layer and epoch of a feature dump."""

  coding = _coding(args)
  manifest = RunManifest("probe", {"dump" : args.dump, "pool" : args.pool,
                                   "maxElements" : args.max_elements,
                                   "coding" : coding.asDict()},
                         args.seed, [args.dump], args.stamp)
  report = probe(loadDump(args.dump), coding, args.pool, args.max_elements)
  manifest.finish()
  _csv(args, "layers", ["layer", "epoch", "rs", "deltaRs"], report.rows(),
       "rs of every layer and epoch; deltaRs is the range of the layer over epochs")
  return report.asDict(), manifest

def cmdStudy(args) :
  """ Synthetic measure studies."""

  if args.study in ("overlap", "preprocess") and not args.density_raw :
    _log.info("%s study: density on unscaled features", args.study)
    args.density_raw = True
  config = _measureConfig(args)
  seeds = list(range(args.seed, args.seed + args.seeds))
  manifest = RunManifest("study", {"study" : args.study, "samples" : args.samples,
                                   "seeds" : seeds, "measures" : config.asDict()},
                         args.seed, (), args.stamp)
  if args.study == "shapes" :
    result = studies.shapeComparison(args.samples, seeds, config)
  elif args.study == "overlap" :
    result = studies.blobOverlapStudy(range(1, 10), args.samples, seeds, config)
  elif args.study == "preprocess" :
    result = studies.preprocessingStudy(range(1, 10), METHODS, args.seed,
                                        args.samples, config)
  else :
    result = studies.boundaryStudy(range(1, 5), args.samples, args.seed, config)
  manifest.finish()
  _csv(args, args.study, result.header(), result.table())
  return result.asDict(), manifest

# argument parsing

def _common(p) :
  p.add_argument("--seed", type = int, default = 0, help = "master seed (0)")
  p.add_argument("-o", "--output", default = None,
                 help = "output file (default stdout)")
  p.add_argument("--csv", metavar = "PREFIX", default = None,
                 help = "also write plot data files PREFIX-<name>.csv")
  p.add_argument("--stamp", action = "store_true",
                 help = "record wall clock times in the report")
  p.add_argument("-v", "--verbose", action = "count", default = 0,
                 help = "-v progress, -vv debug")

def _codingOptions(p) :
  p.add_argument("--paper-defaults", action = "store_true",
                 help = "pin epsilon 0.5, non-zero mean rate, density threshold"
                 " 0.15, SNR 5..20 dB in 16 levels, 20 trials")
  p.add_argument("--epsilon", type = float, default = None,
                 help = "coding precision (%g)" % DEFAULT_EPSILON)
  p.add_argument("--variant", choices = (NON_ZERO_MEAN, ZERO_MEAN), default = None,
                 help = "coding rate variant (%s)" % NON_ZERO_MEAN)

def _measureOptions(p) :
  p.add_argument("--measures", default = None,
                 help = "comma separated subset of " + ",".join(ALL_MEASURES))
  p.add_argument("--density-threshold", type = float, default = None,
                 help = "density graph edge threshold (%g)" % DEFAULT_DENSITY_THRESHOLD)
  p.add_argument("--density-raw", action = "store_true",
                 help = "density graph on unscaled features")
  p.add_argument("--n2-any", action = "store_true",
                 help = "n2 nearest neighbour of any class")
  p.add_argument("--streaming", action = "store_true",
                 help = "do not store the distance matrix")
  p.add_argument("--max-samples", type = int, default = MAX_CACHED_SAMPLES)
  p.add_argument("--rs-preprocess", choices = METHODS, default = None,
                 help = "preprocess the data for rs only")

def _dataOptions(p) :
  p.add_argument("--input", default = None, help = "delimited data file")
  p.add_argument("--label-col", type = int, default = -1,
                 help = "class column, 0 based (last)")
  p.add_argument("--delimiter", default = ',')
  p.add_argument("--shape", choices = SHAPES, default = None,
                 help = "generate the data instead")
  p.add_argument("--samples", type = int, default = 1000,
                 help = "samples per class of generated data (1000)")
  p.add_argument("--sd", type = float, default = None,
                 help = "SD / jitter of generated data (shape default)")
  p.add_argument("--level", type = int, default = None,
                 help = "boundary frequency (1..4)")
  p.add_argument("--preprocess", choices = METHODS, default = None)

def buildParser() :
  parser = argparse.ArgumentParser(prog = "sepy",
                                   description = "Data separability measures.")
  parser.add_argument("--version", action = "version", version = __version__)
  sub = parser.add_subparsers(dest = "command")
  sub.required = True

  p = sub.add_parser("measure", help = "measures of one data set")
  _common(p) ; _codingOptions(p) ; _measureOptions(p) ; _dataOptions(p)
  p.set_defaults(run = cmdMeasure)

  p = sub.add_parser("generate", help = "write a generated data set")
  _common(p)
  p.add_argument("--shape", choices = SHAPES, required = True)
  p.add_argument("--samples", type = int, default = 1000)
  p.add_argument("--sd", type = float, default = None)
  p.add_argument("--level", type = int, default = None)
  p.add_argument("--preprocess", choices = METHODS, default = None)
  p.set_defaults(run = cmdGenerate)

  p = sub.add_parser("preprocess", help = "write a preprocessed data file")
  _common(p)
  p.add_argument("--input", required = True)
  p.add_argument("--label-col", type = int, default = -1)
  p.add_argument("--delimiter", default = ',')
  p.add_argument("--method", choices = METHODS, required = True)
  p.set_defaults(run = cmdPreprocess)

  p = sub.add_parser("sweep", help = "accuracy and rs over SNR levels")
  _common(p) ; _codingOptions(p) ; _dataOptions(p)
  p.add_argument("--classifiers", default = ",".join(KINDS),
                 help = "comma separated subset of " + ",".join(KINDS))
  p.add_argument("--k", type = int, default = 5, help = "Knn K (5)")
  p.add_argument("--C", type = float, default = 1.0, help = "SVM C (1)")
  p.add_argument("--alpha", type = float, default = 1e-4,
                 help = "logistic regression L2 penalty (1e-4)")
  p.add_argument("--epochs", type = int, default = 300)
  p.add_argument("--snr-lo", type = float, default = None, help = "dB (5)")
  p.add_argument("--snr-hi", type = float, default = None, help = "dB (20)")
  p.add_argument("--levels", type = int, default = None, help = "SNR levels (16)")
  p.add_argument("--trials", type = int, default = None,
                 help = "noisy copies per level (20)")
  p.add_argument("--allocation", choices = ("equal", "proportional"),
                 default = "equal", help = "split of the noise power over features")
  p.set_defaults(run = cmdSweep)

  p = sub.add_parser("fit", help = "task curves and abilities from a sweep")
  _common(p)
  p.add_argument("sweep", help = "JSON report of sepy sweep")
  p.add_argument("--c-grid", default = None, metavar = "LO,HI,K",
                 help = "K values of C log spaced over [LO,HI] (1e-4,100,30)")
  p.add_argument("--c-values", default = None, help = "explicit C values")
  p.add_argument("--epochs", type = int, default = 300,
                 help = "epochs of the strongest SVM")
  p.add_argument("--heldout-alpha", default = "0.0001",
                 help = "penalties of the held-out logistic regressions")
  p.set_defaults(run = cmdFit)

  p = sub.add_parser("probe", help = "rs of network layers")
  _common(p) ; _codingOptions(p)
  p.add_argument("dump", help = "feature dump file or directory")
  p.add_argument("--pool", action = "store_true",
                 help = "2x2 average pooling of spatial features")
  p.add_argument("--max-elements", type = int, default = DEFAULT_MAX_ELEMENTS,
                 help = "subsample records with more samples x features")
  p.set_defaults(run = cmdProbe)

  p = sub.add_parser("study", help = "synthetic measure studies")
  _common(p) ; _codingOptions(p) ; _measureOptions(p)
  p.add_argument("study", choices = ("shapes", "overlap", "preprocess", "boundary"))
  p.add_argument("--samples", type = int, default = 500,
                 help = "samples per class (500)")
  p.add_argument("--seeds", type = int, default = 10,
                 help = "number of seeds, starting at --seed (10)")
  p.set_defaults(run = cmdStudy)

  return parser

def main(argv = None) :
  """ Run the command line. Returns the exit code."""

  parser = buildParser()
  try :
    args = parser.parse_args(argv)
  except SystemExit as e :
    return e.code

  logging.basicConfig(stream = sys.stderr,
                      level = [logging.WARNING, logging.INFO,
                               logging.DEBUG][min(args.verbose, 2)],
                      format = "%(levelname)s %(name)s: %(message)s")
  try :
    _settle(args)
    report, manifest = args.run(args)
    if manifest is not None :
      _log.info("%s done in %s", args.command, tohms(manifest.elapsed))
    if report is not None :
      writeJson(report, manifest, args.output)
  except UsageError as e :
    _log.error("%s", e)
    return 2
  except (SepyError, IOError) as e :
    _log.error("%s: %s", e.__class__.__name__, e)
    return 1
  return 0

if __name__ == '__main__':
  sys.exit(main())
