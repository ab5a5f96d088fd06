use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{invalid, Error, Result};
use crate::groups::{FiniteGroup, GroupElement, GroupModel, GroupSpec};

/// A finitely supported lamp configuration: base element -> lamp element,
/// storing only non-identity lamps.
pub type LampConfig = BTreeMap<GroupElement, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub lamps: LampConfig,
    pub position: GroupElement,
}

impl WreathElement {
    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.lamps.keys()
    }
}

/// One standard generator of A ≀ B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WreathGen {
    /// Multiply the lamp at the current position by this lamp element.
    Lamp(usize),
    /// Move the lamplighter by this base generator.
    Move(GroupElement),
}

/// The lamplighter group A ≀ B with finite lamps group A and standard
/// generating set S_A ∪ S_B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lamplighter {
    lamps: FiniteGroup,
    base: GroupModel,
    gens: Vec<WreathGen>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LamplighterSpec {
    pub lamps: GroupSpec,
    pub base: GroupSpec,
}

impl LamplighterSpec {
    pub fn build(&self) -> Result<Lamplighter> {
        Lamplighter::new(self.lamps.build_finite()?, self.base.build()?)
    }
}

impl Lamplighter {
    pub fn new(lamps: FiniteGroup, base: GroupModel) -> Result<Self> {
        if lamps.order() < 2 {
            return Err(invalid("lamps group must be nontrivial"));
        }
        let gens = lamps
            .gens()
            .iter()
            .map(|&s| WreathGen::Lamp(s))
            .chain(base.generators().into_iter().map(WreathGen::Move))
            .collect();
        Ok(Lamplighter { lamps, base, gens })
    }

    /// Z/2 ≀ base.
    pub fn over(base: GroupModel) -> Result<Self> {
        Lamplighter::new(FiniteGroup::cycle(2)?, base)
    }

    pub fn lamps(&self) -> &FiniteGroup {
        &self.lamps
    }

    pub fn base(&self) -> &GroupModel {
        &self.base
    }

    pub fn generators(&self) -> &[WreathGen] {
        &self.gens
    }

    pub fn name(&self) -> String {
        format!("{} wr {}", self.lamps.table().name(), self.base.name())
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            lamps: LampConfig::new(),
            position: self.base.identity(),
        }
    }

    /// Builds an element from (base element, lamp element) pairs; repeated
    /// keys multiply.
    pub fn element(
        &self,
        lamps: &[(GroupElement, usize)],
        position: GroupElement,
    ) -> Result<WreathElement> {
        self.base.check(&position)?;
        let mut config = LampConfig::new();
        for (y, v) in lamps {
            self.base.check(y)?;
            if *v >= self.lamps.order() {
                return Err(invalid(format!("lamp value {v} out of range")));
            }
            let cur = config.get(y).copied().unwrap_or(self.lamps.identity());
            set_lamp(
                &mut config,
                y.clone(),
                self.lamps.table().mul(cur, *v),
                self.lamps.identity(),
            );
        }
        Ok(WreathElement {
            lamps: config,
            position,
        })
    }

    pub fn check(&self, g: &WreathElement) -> Result<()> {
        self.base.check(&g.position)?;
        for (y, &v) in &g.lamps {
            self.base.check(y)?;
            if v == self.lamps.identity() || v >= self.lamps.order() {
                return Err(Error::ModelMismatch(format!(
                    "stored lamp value {v} is invalid"
                )));
            }
        }
        Ok(())
    }

    /// (f, b)(f', b') = (f · (b·f'), bb') with (b·f')(y) = f'(b⁻¹y).
    pub fn multiply(&self, g: &WreathElement, h: &WreathElement) -> Result<WreathElement> {
        self.check(g)?;
        self.check(h)?;
        let mut lamps = g.lamps.clone();
        for (y, &v) in &h.lamps {
            let key = self.base.multiply(&g.position, y)?;
            let cur = lamps.get(&key).copied().unwrap_or(self.lamps.identity());
            set_lamp(
                &mut lamps,
                key,
                self.lamps.table().mul(cur, v),
                self.lamps.identity(),
            );
        }
        Ok(WreathElement {
            lamps,
            position: self.base.multiply(&g.position, &h.position)?,
        })
    }

    pub fn invert(&self, g: &WreathElement) -> Result<WreathElement> {
        self.check(g)?;
        // (f, b)⁻¹ = (b⁻¹·f⁻¹, b⁻¹).
        let binv = self.base.invert(&g.position)?;
        let mut lamps = LampConfig::new();
        for (y, &v) in &g.lamps {
            lamps.insert(self.base.multiply(&binv, y)?, self.lamps.table().inv(v));
        }
        Ok(WreathElement {
            lamps,
            position: binv,
        })
    }

    /// g · s for a generator s.
    pub fn step(&self, g: &WreathElement, s: &WreathGen) -> WreathElement {
        match s {
            WreathGen::Lamp(a) => {
                let mut lamps = g.lamps.clone();
                let cur = lamps
                    .get(&g.position)
                    .copied()
                    .unwrap_or(self.lamps.identity());
                set_lamp(
                    &mut lamps,
                    g.position.clone(),
                    self.lamps.table().mul(cur, *a),
                    self.lamps.identity(),
                );
                WreathElement {
                    lamps,
                    position: g.position.clone(),
                }
            }
            WreathGen::Move(s) => WreathElement {
                lamps: g.lamps.clone(),
                position: self
                    .base
                    .multiply(&g.position, s)
                    .expect("generators belong to the base model"),
            },
        }
    }

    /// g · s for every standard generator s, without repeats.
    pub fn neighbors(&self, g: &WreathElement) -> Vec<WreathElement> {
        let mut out: Vec<WreathElement> = Vec::with_capacity(self.gens.len());
        for s in &self.gens {
            let h = self.step(g, s);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }

    /// Lamp element of largest word length, smallest index on ties.
    pub fn deep_lamp(&self) -> usize {
        let lamps = &self.lamps;
        (0..lamps.order())
            .max_by_key(|&v| (lamps.norm(v), std::cmp::Reverse(v)))
            .unwrap()
    }

    /// `{y=v;...}@x` with base elements in their canonical text form.
    pub fn format(&self, g: &WreathElement) -> String {
        let lamps: Vec<String> = g
            .lamps
            .iter()
            .map(|(y, v)| format!("{}={v}", self.base.format(y)))
            .collect();
        format!("{{{}}}@{}", lamps.join(";"), self.base.format(&g.position))
    }

    pub fn parse(&self, text: &str) -> Result<WreathElement> {
        let text = text.trim();
        let (lamps, pos) = text
            .rsplit_once('@')
            .ok_or_else(|| invalid(format!("expected {{lamps}}@position, got {text:?}")))?;
        let inner = lamps
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| invalid(format!("lamps must be braced in {text:?}")))?;
        let mut pairs = Vec::new();
        for item in inner.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (y, v) = item.rsplit_once('=').ok_or_else(|| {
                invalid(format!("lamp entry {item:?} needs the form element=value"))
            })?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad lamp value in {item:?}")))?;
            pairs.push((self.base.parse(y.trim())?, v));
        }
        self.element(&pairs, self.base.parse(pos.trim())?)
    }

    /// Element from JSON: `{"lamps": {"<base element>": <lamp index>, ...},
    /// "position": "<base element>"}`. Both fields are optional.
    pub fn element_from_json(&self, value: &serde_json::Value) -> Result<WreathElement> {
        let obj = value
            .as_object()
            .ok_or_else(|| invalid("element must be a JSON object"))?;
        if let Some(k) = obj.keys().find(|k| *k != "lamps" && *k != "position") {
            return Err(invalid(format!("unknown field {k:?} in element")));
        }
        let mut pairs = Vec::new();
        if let Some(lamps) = obj.get("lamps") {
            let map = lamps
                .as_object()
                .ok_or_else(|| invalid("\"lamps\" must map base elements to lamp indices"))?;
            for (y, v) in map {
                let v = v.as_u64().ok_or_else(|| {
                    invalid(format!("lamp value at {y:?} must be a nonnegative integer"))
                })?;
                let y = self
                    .base
                    .parse(y)
                    .map_err(|e| invalid(format!("lamps.{y}: {e}")))?;
                pairs.push((y, v as usize));
            }
        }
        let position = match obj.get("position") {
            None => self.base.identity(),
            Some(serde_json::Value::String(s)) => self
                .base
                .parse(s)
                .map_err(|e| invalid(format!("position: {e}")))?,
            Some(serde_json::Value::Number(n)) => self
                .base
                .parse(&n.to_string())
                .map_err(|e| invalid(format!("position: {e}")))?,
            Some(_) => return Err(invalid("position must be a string")),
        };
        self.element(&pairs, position)
    }
}

fn set_lamp(config: &mut LampConfig, key: GroupElement, value: usize, identity: usize) {
    if value == identity {
        config.remove(&key);
    } else {
        config.insert(key, value);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_wr_z() -> Lamplighter {
        Lamplighter::over(GroupModel::abelian(1, &[], &[vec![1]]).unwrap()).unwrap()
    }

    #[test]
    fn products() {
        let w = z2_wr_z();
        let z = w.base().clone();
        let n = |k: i64| z.parse(&k.to_string()).unwrap();
        let lit0 = w.element(&[(n(0), 1)], n(0)).unwrap();
        assert_eq!(w.multiply(&lit0, &lit0).unwrap(), w.identity());
        let g = w.element(&[(n(0), 1)], n(1)).unwrap();
        let p = w.multiply(&g, &lit0).unwrap();
        assert_eq!(p, w.element(&[(n(0), 1), (n(1), 1)], n(1)).unwrap());
        assert_eq!(w.multiply(&p, &w.identity()).unwrap(), p);
        assert_eq!(
            w.multiply(&p, &w.invert(&p).unwrap()).unwrap(),
            w.identity()
        );
    }

    #[test]
    fn identity_neighbors() {
        let w = z2_wr_z();
        assert_eq!(w.neighbors(&w.identity()).len(), 3);
    }

    #[test]
    fn text_round_trip() {
        let w = z2_wr_z();
        let g = w.parse("{-1=1;1=1}@0").unwrap();
        assert_eq!(g.lamps.len(), 2);
        assert_eq!(w.parse(&w.format(&g)).unwrap(), g);
        let j: serde_json::Value = serde_json::json!({"lamps": {"-1": 1, "1": 1}, "position": "0"});
        assert_eq!(w.element_from_json(&j).unwrap(), g);
        assert!(w
            .element_from_json(&serde_json::json!({"lamp": {}}))
            .is_err());
    }
}
