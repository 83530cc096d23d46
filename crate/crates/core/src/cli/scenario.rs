//! Worked rank-one and rank-two examples with their exact numerics.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::charges::{epsilon_bound, rho, PlanePoint};
use crate::chern::{
    discriminant, dual, frac, from_twists, int, mu, negate, ChernCharacter, Scalar,
};
use crate::destabilizers::{largest_tilt_wall, last_wall_on_theta, wall_free_point};
use crate::error::{Error, Result};
use crate::walls::theta_curve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Quoted for context; not checked by this tool.
    Cited,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub status: Status,
    /// Keys of `computed` the verdict is based on.
    pub refs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub inputs: Vec<ChernCharacter>,
    pub computed: BTreeMap<String, Value>,
    /// The operation that produced each computed value.
    pub provenance: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
}

impl ScenarioReport {
    fn new(name: &str, inputs: Vec<ChernCharacter>) -> Self {
        ScenarioReport {
            name: name.into(),
            inputs,
            computed: BTreeMap::new(),
            provenance: BTreeMap::new(),
            verdicts: Vec::new(),
        }
    }

    fn put(&mut self, key: &str, op: &str, value: impl Serialize) {
        self.computed.insert(
            key.into(),
            serde_json::to_value(value).expect("serializable"),
        );
        self.provenance.insert(key.into(), op.into());
    }

    fn check(&mut self, claim: &str, ok: bool, refs: &[&str]) {
        debug_assert!(refs.iter().all(|r| self.computed.contains_key(*r)));
        self.verdicts.push(Verdict {
            claim: claim.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            refs: refs.iter().map(|s| s.to_string()).collect(),
        });
    }

    fn cite(&mut self, claim: &str) {
        self.verdicts.push(Verdict {
            claim: claim.into(),
            status: Status::Cited,
            refs: Vec::new(),
        });
    }

    pub fn all_computed_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }
}

fn ch(s: &str) -> ChernCharacter {
    ChernCharacter::parse(s).expect("valid literal")
}

fn point_json(p: &PlanePoint) -> Value {
    json!({ "beta": p.beta.to_string(), "t": p.t.to_string() })
}

fn collapsing() -> Result<ScenarioReport> {
    let classes: Vec<(i64, i64)> = vec![(1, 2), (2, 3)];
    let inputs = classes
        .iter()
        .map(|&(r, n)| ChernCharacter::new(int(r), int(0), int(0), int(-n)))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = ScenarioReport::new("collapsing", inputs.clone());
    for (&(r, n), v) in classes.iter().zip(&inputs) {
        let tag = format!("v_{r}_{n}");
        let k_delta = format!("{tag}.delta");
        let k_theta = format!("{tag}.theta");
        let k_wall = format!("{tag}.largest_wall");
        let k_point = format!("{tag}.theta_point");
        let k_eps = format!("{tag}.epsilon_bound");
        let k_ch3 = format!("{tag}.ch3");
        rep.put(&k_delta, "chern.discriminant", discriminant(v).to_string());
        rep.put(&k_theta, "walls.theta_curve", theta_curve(v)?);
        rep.put(
            &k_wall,
            "destabilizers.largest_tilt_wall",
            largest_tilt_wall(v)?,
        );
        let p = wall_free_point(v)?;
        rep.put(&k_point, "destabilizers.wall_free_point", point_json(&p));
        let eps = epsilon_bound(v, &p)?;
        rep.put(&k_eps, "charges.epsilon_bound", eps.to_string());
        rep.put(&k_ch3, "input", v.v3().to_string());
        rep.check(
            &format!("Delta(v_{r},{n}) = 0"),
            discriminant(v) == int(0),
            &[&k_delta],
        );
        rep.check(
            &format!("point for v_{r},{n} lies on Theta"),
            rho(v, &p) == int(0),
            &[&k_point],
        );
        rep.check(
            &format!("ch_3 = -{n} is within the ch_3 bound at that point"),
            *v.v3() <= eps,
            &[&k_eps, &k_ch3],
        );
    }
    rep.cite("the PT side of the collapsing wall contains no semistable objects");
    Ok(rep)
}

fn fake(point: Option<PlanePoint>) -> Result<ScenarioReport> {
    let w = ch("2,-1,-1/2");
    let mut rep = ScenarioReport::new("fake", vec![w.clone()]);
    let (p, op) = match point {
        Some(p) => (p, "input"),
        None => (wall_free_point(&w)?, "destabilizers.wall_free_point"),
    };
    rep.put("point", op, point_json(&p));
    let m = mu(&w).finite().cloned().expect("rank 2");
    rep.put("mu", "chern.mu", m.to_string());
    rep.check(
        "point lies on Theta^- of w",
        rho(&w, &p) == int(0) && p.beta < m,
        &["point", "mu"],
    );
    let eps = epsilon_bound(&w, &p)?;
    rep.put("epsilon_bound", "charges.epsilon_bound", eps.to_string());
    let reflexive: Scalar = frac(5, 6);
    rep.put("ch3_reflexive", "input", reflexive.to_string());
    rep.check(
        "epsilon bound >= 5/6",
        eps >= reflexive,
        &["epsilon_bound", "ch3_reflexive"],
    );
    rep.cite("a class with ch_3 equal to the maximal value makes the wall transparent (fake wall)");
    Ok(rep)
}

fn honest() -> Result<ScenarioReport> {
    let v = ch("2,-1,-1/2,-1/6");
    let mut rep = ScenarioReport::new("honest", vec![v.clone()]);
    let b = from_twists(&[(3, -1), (-1, -2)]);
    rep.put("ch_B", "chern.from_twists", &b);
    rep.check(
        "ch(O(-1)^3) - ch(O(-2)) = (2,-1,-1/2,5/6)",
        b == ch("2,-1,-1/2,5/6"),
        &["ch_B"],
    );
    rep.put(
        "delta_v",
        "chern.discriminant",
        discriminant(&v).to_string(),
    );
    rep.check("Delta(v) = 3", discriminant(&v) == int(3), &["delta_v"]);
    rep.put("neg_v", "chern.negate", negate(&v));
    rep.check(
        "-v = (-2,1,1/2,1/6)",
        negate(&v) == ch("-2,1,1/2,1/6"),
        &["neg_v"],
    );
    rep.put("dual_v", "chern.dual", dual(&v));
    rep.check(
        "v dual = (2,1,-1/2,1/6)",
        dual(&v) == ch("2,1,-1/2,1/6"),
        &["dual_v"],
    );
    rep.put("theta_v", "walls.theta_curve", theta_curve(&v)?);
    let last = last_wall_on_theta(&v)?;
    rep.put("last_wall", "destabilizers.last_wall_on_theta", &last);
    let on_theta = last.as_ref().is_some_and(|l| {
        l.walls.iter().all(|w| {
            crate::walls::intersect_theta_tilt(&v, w)
                .map(|xs| xs.iter().any(|x| x.certify(&v, w)))
                .unwrap_or(false)
        })
    });
    rep.check(
        "last wall point lies on Theta_v and on its wall",
        on_theta,
        &["last_wall"],
    );
    rep.cite("B is a reflexive sheaf destabilizing along an actual (honest) wall");
    Ok(rep)
}

/// Runs a named scenario: `collapsing`, `fake` or `honest`. `point` overrides
/// the wall-free point used by `fake`.
pub fn run_scenario(name: &str, point: Option<PlanePoint>) -> Result<ScenarioReport> {
    match name {
        "collapsing" => collapsing(),
        "fake" => fake(point),
        "honest" => honest(),
        other => Err(Error::Usage(format!(
            "unknown scenario {other:?} (expected collapsing, fake or honest)"
        ))),
    }
}
