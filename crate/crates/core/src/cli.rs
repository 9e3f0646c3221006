//! The command-line front end: argument parsing, input files, and certificate emission.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cert::{Certificate, ConfigFile, Format, RunConfig};
use crate::error::{Error, Result};
use crate::fixtures::{check_fixture, corpus, parse, read_site, CoefficientFile};
use crate::holim::{alpha_beta, comma, holim, homotopy_fibre_check, SFunctor};
use crate::homotopy::{contractible, pi0, weq_check};
use crate::kan::kan_check;
use crate::presheaf::GroupPresheaf;
use crate::sgroupoid::{SgdFunctor, SimpGroupoid};
use crate::site::FinSite;
use crate::sset::{circle, TruncSSet};
use crate::torsors::*;
use crate::wbar::{verify_adjunction, w_total};

#[derive(Debug, Parser)]
#[command(name = "simpgd", version, about = "Simplicial groupoids, W-bar, homotopy colimits and torsor classification")]
pub struct Cli {
  #[command(subcommand)]
  pub command: Command,
  /// Truncation dimension N (at least 2).
  #[arg(long, global = true)]
  pub trunc: Option<usize>,
  /// Largest covering family considered when refining covers.
  #[arg(long, global = true)]
  pub depth: Option<usize>,
  /// Bound on enumerated torsor carriers and candidates.
  #[arg(long, global = true)]
  pub bound: Option<usize>,
  /// Bound on enumerated maps.
  #[arg(long, global = true)]
  pub limit: Option<usize>,
  /// Site file.
  #[arg(long, global = true)]
  pub site: Option<PathBuf>,
  /// Where to write the constructed object (a directory for `fixtures`).
  #[arg(long, global = true)]
  pub out: Option<PathBuf>,
  /// Output format, text or json; json prints one certificate per line.
  #[arg(long, global = true, value_parser = parse_format)]
  pub format: Option<Format>,
  /// JSON file of defaults for trunc, depth, bound, limit and format.
  #[arg(long, global = true)]
  pub config: Option<PathBuf>,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
  s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
  /// W̄ of a coefficient groupoid, as a level table and simplicial set.
  Wbar { input: PathBuf },
  /// The comparison map j: dB → W̄.
  JMap { input: PathBuf },
  /// The total object WG → W̄G of a simplicial group.
  WTotal { input: PathBuf },
  /// The homotopy colimit of a functor on the coefficient groupoid.
  Holim {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FunctorChoice::Point)]
    functor: FunctorChoice,
    #[arg(long, default_value_t = 0)]
    object: usize,
  },
  /// The comma object of the identity over an object, checked contractible.
  Comma {
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    object: usize,
  },
  /// The maps α, β into dB and the homotopy between them.
  AlphaBeta { input: PathBuf },
  /// The fibre of holim → dB over an object.
  FibreCheck {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FunctorChoice::Regular)]
    functor: FunctorChoice,
    #[arg(long, default_value_t = 0)]
    object: usize,
  },
  /// Weak equivalence, Kan and adjunction checks.
  Check {
    #[command(subcommand)]
    check: CheckCommand,
  },
  /// Check, enumerate or classify torsors of a given kind.
  Torsor {
    #[command(subcommand)]
    torsor: TorsorCommand,
  },
  /// Čech H¹ of the constant group over the finest covering family, against π₀ of torsors.
  H1 { input: PathBuf },
  /// Emit and validate the built-in fixtures.
  Fixtures,
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
  /// j: dB → W̄ is a weak equivalence.
  JWeq { input: PathBuf },
  /// dB and W̄ are Kan up to dimension 3.
  Kan { input: PathBuf },
  /// Transposes along the loop/W̄ adjunction for Δ⁰, Δ¹ and Δ¹/∂.
  Adjunction { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum TorsorCommand {
  /// Check a torsor file, or the trivial torsor when none is given.
  Check {
    input: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    /// Torsor in reflexive-graph form (an action of the coefficient groupoid).
    #[arg(long)]
    torsor: Option<PathBuf>,
  },
  /// Every torsor up to the bound, grouped into isomorphism classes.
  Enumerate {
    input: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
  },
  /// Compare π₀ of torsors with homotopy classes of maps into the classifying object.
  Classify {
    input: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
  },
}

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
  s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctorChoice {
  /// Constant at a point.
  Point,
  /// Corepresented at `--object`: the action of the groupoid on its arrows out of that object.
  Regular,
}

/// Everything a command produced.
#[derive(Debug, Default)]
pub struct Output {
  pub certificates: Vec<Certificate>,
  pub text: String,
  /// The constructed object, written to `--out` when given.
  pub artifact: Option<String>,
  pub format: Format,
}

impl Output {
  pub fn all_pass(&self) -> bool {
    self.certificates.iter().all(Certificate::is_pass)
  }

  pub fn render(&self, format: Format) -> String {
    match format {
      Format::Json => {
        self.certificates.iter().map(|c| serde_json::to_string(c).expect("certificate serializes") + "\n").collect()
      }
      Format::Text => {
        let mut s = self.text.clone();
        for c in &self.certificates {
          s.push_str(&format!("{} {}\n", c.verdict, c.claim));
        }
        s
      }
    }
  }
}

fn table(headers: &[&str], columns: &[&[usize]]) -> String {
  let mut s = format!("{:<6}", "level");
  for h in headers {
    s.push_str(&format!(" {h:>10}"));
  }
  s.push('\n');
  let rows = columns.iter().map(|c| c.len()).max().unwrap_or(0);
  for n in 0..rows {
    s.push_str(&format!("{n:<6}"));
    for c in columns {
      s.push_str(&format!(" {:>10}", c.get(n).map(|v| v.to_string()).unwrap_or_default()));
    }
    s.push('\n');
  }
  s
}

fn located(path: &Path, e: Error) -> Error {
  match e {
    Error::Invalid(m) => Error::Invalid(format!("{}: {m}", path.display())),
    e => e,
  }
}

fn read(path: &Path) -> Result<String> {
  fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn coefficients(path: &Path) -> Result<CoefficientFile> {
  CoefficientFile::from_json(&read(path)?).map_err(|e| located(path, e))
}

struct Ctx {
  cfg: RunConfig,
  site: Option<PathBuf>,
}

impl Ctx {
  fn site(&self) -> Result<FinSite> {
    let path = self.site.as_ref().ok_or_else(|| Error::Invalid("--site is required".into()))?;
    read_site(&read(path)?).map_err(|e| located(path, e))
  }

  fn cert(&self, claim: impl Into<String>, pass: bool, witnesses: impl serde::Serialize) -> Certificate {
    Certificate::new(claim, pass, witnesses, self.cfg.parameters())
  }

  /// Highest homotopy degree a weak-equivalence check can see at this truncation.
  fn maxdeg(&self) -> usize {
    (self.cfg.trunc - 2).min(2)
  }

  fn maxdim(&self) -> usize {
    self.cfg.trunc.min(3)
  }

  fn classify_config(&self) -> ClassifyConfig {
    ClassifyConfig { trunc: self.cfg.trunc, bound: self.cfg.bound, limit: self.cfg.limit, max_cover: self.cfg.depth }
  }
}

fn functor(c: &SimpGroupoid, choice: FunctorChoice, a: usize) -> Result<SFunctor> {
  if a >= c.objects() {
    return Err(Error::Invalid(format!("object {a} out of range: the groupoid has {} objects", c.objects())));
  }
  Ok(match choice {
    FunctorChoice::Point => SFunctor::point(c),
    FunctorChoice::Regular => SFunctor::corepresented(c, a),
  })
}

/// Resolves the configuration and runs one command.
pub fn run(cli: &Cli) -> Result<Output> {
  let mut cfg = RunConfig::default();
  if let Some(p) = &cli.config {
    cfg.apply(&parse::<ConfigFile>(&read(p)?)?);
  }
  cfg.trunc = cli.trunc.unwrap_or(cfg.trunc);
  cfg.depth = cli.depth.unwrap_or(cfg.depth);
  cfg.bound = cli.bound.unwrap_or(cfg.bound);
  cfg.limit = cli.limit.unwrap_or(cfg.limit);
  cfg.format = cli.format.unwrap_or(cfg.format);
  cfg.inputs = cli.site.iter().cloned().collect();
  cfg.validate()?;
  let mut cx = Ctx { cfg, site: cli.site.clone() };
  let mut out = Output { format: cx.cfg.format, ..Default::default() };
  match execute(cli, &mut cx, &mut out) {
    Err(Error::BoundExceeded(what)) => {
      out.certificates.push(cx.cert("enumeration.bound", false, json!({ "exceeded": what })));
      Ok(out)
    }
    Err(e) => Err(e),
    Ok(()) => Ok(out),
  }
}

fn execute(cli: &Cli, cx: &mut Ctx, out: &mut Output) -> Result<()> {
  let n = cx.cfg.trunc;
  let mut load = |cx: &mut Ctx, p: &PathBuf| -> Result<CoefficientFile> {
    cx.cfg.inputs.push(p.clone());
    coefficients(p)
  };
  match &cli.command {
    Command::Wbar { input } => {
      let h = load(cx, input)?.simplicial(n)?;
      let w = h.wbar();
      let report = w.sset.validate();
      out.text = table(&["W̄"], &[w.sset.counts()]);
      out.certificates.push(cx.cert(
        "wbar.validate",
        report.is_pass(),
        json!({ "counts": w.sset.counts(), "validation": report }),
      ));
      out.artifact = Some(w.sset.to_json());
    }
    Command::JMap { input } => {
      let h = load(cx, input)?.simplicial(n)?;
      let (db, w) = (h.db(), h.wbar());
      let j = h.j_map(&db, &w)?;
      let simplicial = j.check(&db.sset, &w.sset);
      out.text = table(&["dB", "W̄"], &[db.sset.counts(), w.sset.counts()]);
      out.certificates.push(cx.cert(
        "j-map.simplicial",
        simplicial.is_ok(),
        json!({ "db": db.sset.counts(), "wbar": w.sset.counts(), "bijective": j.is_bijective(&w.sset), "error": simplicial.err().map(|e| e.to_string()) }),
      ));
      out.artifact = Some(serde_json::to_string(&j)?);
    }
    Command::WTotal { input } => {
      let h = load(cx, input)?.simplicial(n)?;
      let t = w_total(&h)?;
      let w = h.wbar();
      let valid = t.w.validate();
      let map = t.projection.check(&t.w, &w.sset);
      out.text = table(&["WG", "W̄G"], &[t.w.counts(), w.sset.counts()]);
      out.certificates.push(cx.cert(
        "w-total.validate",
        valid.is_pass() && map.is_ok(),
        json!({ "counts": t.w.counts(), "validation": valid, "projection": map.err().map(|e| e.to_string()) }),
      ));
      out.artifact = Some(t.w.to_json());
    }
    Command::Holim { input, functor: choice, object } => {
      let c = load(cx, input)?.simplicial(n)?;
      let x = functor(&c, *choice, *object)?;
      x.check(&c)?;
      let h = holim(&c, &x);
      let valid = h.sset().validate();
      out.text = table(&["holim", "dB"], &[h.sset().counts(), h.db.sset.counts()]);
      out.certificates.push(cx.cert(
        "holim.validate",
        valid.is_pass(),
        json!({ "counts": h.sset().counts(), "components": pi0(h.sset()).count, "validation": valid }),
      ));
      out.artifact = Some(h.sset().to_json());
    }
    Command::Comma { input, object } => {
      let c = load(cx, input)?.simplicial(n)?;
      if *object >= c.objects() {
        return Err(Error::Invalid(format!("object {object} out of range")));
      }
      let h = comma(&c, &c, &SgdFunctor::identity(&c), *object)?;
      let v = contractible(h.sset(), cx.maxdeg())?;
      out.text = table(&["comma"], &[h.sset().counts()]);
      out.certificates.push(cx.cert(
        "comma.contractible",
        v.is_pass(),
        json!({ "object": object, "counts": h.sset().counts(), "weq": v }),
      ));
      out.artifact = Some(h.sset().to_json());
    }
    Command::AlphaBeta { input } => {
      let c = load(cx, input)?.simplicial(n)?;
      let ab = alpha_beta(&c)?;
      let valid = ab.homotopy.check(&ab.cylinder.sset, &ab.db.sset);
      out.text = table(&["holim", "dB"], &[ab.join.sset.counts(), ab.db.sset.counts()]);
      out.certificates.push(cx.cert(
        "alpha-beta.homotopy",
        valid.is_ok(),
        json!({ "error": valid.err().map(|e| e.to_string()) }),
      ));
      out.certificates.push(cx.cert("alpha-beta.ends", ab.ends_agree(), json!({ "holim": ab.join.sset.counts() })));
    }
    Command::FibreCheck { input, functor: choice, object } => {
      let c = load(cx, input)?.simplicial(n)?;
      let x = functor(&c, *choice, *object)?;
      let r = homotopy_fibre_check(&c, &x, *object, cx.maxdeg())?;
      out.text = table(&["fibre", "X(a)"], &[&r.fibre_counts, x.values[*object].counts()]);
      out.certificates.push(cx.cert("fibre-check", r.is_pass(), &r));
    }
    Command::Check { check } => match check {
      CheckCommand::JWeq { input } => {
        let h = load(cx, input)?.simplicial(n)?;
        let (db, w) = (h.db(), h.wbar());
        let j = h.j_map(&db, &w)?;
        let v = weq_check(&db.sset, &w.sset, &j, cx.maxdeg())?;
        out.certificates.push(cx.cert("check.j-weq", v.is_pass(), &v));
      }
      CheckCommand::Kan { input } => {
        let h = load(cx, input)?.simplicial(n)?;
        for (claim, s) in [("check.kan.db", h.db().sset), ("check.kan.wbar", h.wbar().sset)] {
          let v = kan_check(&s, cx.maxdim());
          out.certificates.push(cx.cert(claim, v.is_pass(), &v));
        }
      }
      CheckCommand::Adjunction { input } => {
        let h = load(cx, input)?.simplicial(n)?;
        for (claim, x) in
          [("delta0", TruncSSet::point(n)), ("delta1", TruncSSet::standard(1, n)), ("circle", circle(n).sset)]
        {
          let (pass, w) = match verify_adjunction(&x, &h, cx.cfg.limit) {
            Ok((a, b)) => (a == b, json!({ "maps": a, "assignments": b })),
            Err(e @ (Error::BoundExceeded(_) | Error::Invalid(_))) => (false, json!({ "error": e.to_string() })),
            Err(e) => return Err(e),
          };
          out.certificates.push(cx.cert(format!("check.adjunction.{claim}"), pass, w));
        }
      }
    },
    Command::Torsor { torsor } => torsor_command(cx, torsor, &mut load, out)?,
    Command::H1 { input } => {
      let site = cx.site()?;
      let c = load(cx, input)?;
      let g = GroupPresheaf::constant(
        &site,
        &c.group().ok_or_else(|| Error::Invalid(format!("{} is not a group", c.name())))?,
      );
      let family = site.finest_terminal_cover(cx.cfg.depth)?;
      let h1 = h1_cech_oracle(&site, &g, &family)?;
      let ts = enumerate_group_torsors(&site, &g, cx.cfg.bound)?;
      let part = pi0_group_torsors(&site, &g, &ts)?;
      out.text = format!("H1 classes {}\ntorsor classes {}\n", h1.classes, part.count);
      let names = h1.family.clone();
      out.certificates.push(
        cx.cert(
          "h1.matches-torsors",
          h1.classes == part.count,
          json!({ "h1": h1, "torsors": ts.len(), "torsor_classes": part.count }),
        )
        .with_family(names),
      );
    }
    Command::Fixtures => {
      let fx = corpus();
      for f in &fx {
        let r = check_fixture(f, n);
        out.text.push_str(&format!("{:<14} {}\n", f.file, if r.is_pass() { "ok" } else { "invalid" }));
        out.certificates.push(cx.cert(format!("fixture.{}", f.file), r.is_pass(), &r));
      }
      if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
        for f in &fx {
          fs::write(dir.join(f.file), &f.json)?;
        }
      }
    }
  }
  if let (Some(path), Some(a), false) = (&cli.out, &out.artifact, matches!(cli.command, Command::Fixtures)) {
    fs::write(path, a)?;
  }
  Ok(())
}

fn torsor_command(
  cx: &mut Ctx,
  cmd: &TorsorCommand,
  load: &mut impl FnMut(&mut Ctx, &PathBuf) -> Result<CoefficientFile>,
  out: &mut Output,
) -> Result<()> {
  let site = cx.site()?;
  let n = cx.cfg.trunc;
  match cmd {
    TorsorCommand::Classify { input, kind } => {
      let coeffs = load(cx, input)?.coefficients(&site, *kind, n)?;
      let r = classify(&site, &coeffs, *kind, &cx.classify_config())?;
      let rt = r.round_trips.as_ref().map_or(true, |t| t.phi_psi && t.psi_phi);
      out.text = format!(
        "kind {}\ncovering family {:?}\ntorsor classes {}\nhomotopy classes {}\nmatching {:?}\n",
        kind, r.family, r.torsor_classes, r.homotopy_classes, r.matching
      );
      let family = r.family.clone();
      out.certificates.push(cx.cert(format!("torsor.classify.{kind}"), r.is_bijection() && rt, &r).with_family(family));
    }
    TorsorCommand::Enumerate { input, kind } => {
      let c = load(cx, input)?;
      let coeffs = c.coefficients(&site, *kind, n)?;
      match (&coeffs, kind) {
        (Coefficients::Group(_) | Coefficients::Groupoid(_), Kind::Group | Kind::GroupoidJt | Kind::GroupoidJ5) => {
          let g = match &coeffs {
            Coefficients::Group(g) => GpdPresheaf::from_groups(&site, g),
            Coefficients::Groupoid(g) => g.clone(),
            _ => unreachable!(),
          };
          let ts = enumerate_jt(&site, &g, cx.cfg.bound)?;
          let verdicts: Vec<TorsorVerdict> = ts.iter().map(|t| jt_check(&site, &g, t)).collect();
          let part = pi0_jt(&site, &g, &ts)?;
          out.text = format!("candidates {}\nclasses {}\n", ts.len(), part.count);
          let pass = verdicts.iter().all(TorsorVerdict::is_pass);
          let sizes: Vec<&[usize]> = ts.iter().map(|t| t.e.sizes.as_slice()).collect();
          out.certificates.push(cx.cert(
            format!("torsor.enumerate.{kind}"),
            pass,
            json!({ "sizes": sizes, "classes": part, "verdicts": verdicts }),
          ));
        }
        _ => {
          let r = classify(&site, &coeffs, *kind, &cx.classify_config())?;
          out.text = format!("candidates {}\nclasses {}\n", r.candidates, r.torsor_classes);
          let family = r.family.clone();
          out.certificates.push(
            cx.cert(
              format!("torsor.enumerate.{kind}"),
              r.flags.is_empty(),
              json!({ "candidates": r.candidates, "classes": r.torsor_classes, "flags": r.flags }),
            )
            .with_family(family),
          );
        }
      }
    }
    TorsorCommand::Check { input, kind, torsor } => {
      let c = load(cx, input)?;
      let coeffs = c.coefficients(&site, *kind, n)?;
      let given = match torsor {
        Some(p) => {
          cx.cfg.inputs.push(p.clone());
          Some(parse::<GroupoidTorsorJT>(&read(p)?).map_err(|e| located(p, e))?)
        }
        None => None,
      };
      let v = check_torsor(&site, &c, &coeffs, *kind, given.as_ref(), cx)?;
      out.certificates.push(cx.cert(format!("torsor.check.{kind}"), v.is_pass(), &v));
    }
  }
  Ok(())
}

/// The groupoid a torsor in reflexive-graph form acts through.
fn action_groupoid(site: &FinSite, coeffs: &Coefficients) -> Option<GpdPresheaf> {
  match coeffs {
    Coefficients::Group(g) => Some(GpdPresheaf::from_groups(site, g)),
    Coefficients::Groupoid(g) => Some(g.clone()),
    Coefficients::TwoGroupoid(g) => Some(GpdPresheaf::constant(site, &g.cells1)),
    Coefficients::Simplicial(_) => None,
  }
}

fn check_torsor(
  site: &FinSite,
  c: &CoefficientFile,
  coeffs: &Coefficients,
  kind: Kind,
  given: Option<&GroupoidTorsorJT>,
  cx: &Ctx,
) -> Result<TorsorVerdict> {
  let n = cx.cfg.trunc;
  let jt = match (given, action_groupoid(site, coeffs)) {
    (Some(t), _) => Some(t.clone()),
    (None, Some(g)) => Some(representable_torsor(site, &g, &vec![0; site.objects()])?),
    (None, None) => None,
  };
  let g = action_groupoid(site, coeffs);
  Ok(match (kind, coeffs) {
    (Kind::Group, Coefficients::Group(gp)) => {
      group_torsor_check(site, gp, &GroupTorsorCandidate::from_jt(jt.as_ref().unwrap()))
    }
    (Kind::GroupoidJt, _) => jt_check(site, g.as_ref().unwrap(), jt.as_ref().unwrap()),
    (Kind::GroupoidJ5, _) => {
      let t = jt.as_ref().unwrap();
      match jt_check(site, g.as_ref().unwrap(), t) {
        TorsorVerdict::Pass => j5_check(site, &jt_to_j5(site, g.as_ref().unwrap(), t, n)?.0)?,
        v => v,
      }
    }
    (Kind::TwoGpd, Coefficients::TwoGroupoid(g2)) => {
      let t = TwoGpdTorsor::from_jt(site, g2, jt.as_ref().unwrap())?;
      two_gpd_torsor_check(site, g2, &t.total(site, g2, n)?.0, cx.cfg.bound.max(64))?
    }
    (Kind::Sgroup, Coefficients::Group(gp)) => {
      let sg = gp.as_sgd(site, n);
      tors1_check(
        site,
        &sg,
        &SimplicialGPresheaf::discrete(site, &sg, &GroupTorsorCandidate::from_jt(jt.as_ref().unwrap()))?,
      )?
    }
    (Kind::Sgroup | Kind::Sgpd, Coefficients::Simplicial(sg))
      if given.is_none() && sg.sections.iter().all(|h| h.objects() == 1) =>
    {
      sgd_torsor_check(site, sg, &SgdTorsorCandidate::trivial_group(site, sg)?)?
    }
    (Kind::Sgpd, Coefficients::Simplicial(sg)) if given.is_none() => {
      // ψ of the first functor out of the Čech groupoid
      let i = cech_groupoid(site, &site.finest_terminal_cover(cx.cfg.depth)?, n);
      let fs = cech_functors(site, sg, &i, cx.cfg.limit)?;
      let f = fs.first().ok_or_else(|| Error::Precondition("no functor out of the Čech groupoid".into()))?;
      sgd_torsor_check(site, sg, &psi(site, sg, &i, f)?)?
    }
    (Kind::Sgpd, Coefficients::Group(gp)) if given.is_none() => {
      let sg = gp.as_sgd(site, n);
      sgd_torsor_check(site, &sg, &SgdTorsorCandidate::trivial_group(site, &sg)?)?
    }
    _ => {
      return Err(Error::Invalid(format!(
        "{} coefficients with a torsor file cannot be checked as kind {kind}",
        c.name()
      )))
    }
  })
}

/// Runs the parsed command line and prints its report; returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
  match run(cli) {
    Ok(out) => {
      print!("{}", out.render(out.format));
      if out.all_pass() {
        0
      } else {
        1
      }
    }
    Err(Error::BoundExceeded(what)) => {
      eprintln!("error: enumeration bound exceeded: {what}");
      1
    }
    Err(e) => {
      eprintln!("error: {e}");
      2
    }
  }
}
