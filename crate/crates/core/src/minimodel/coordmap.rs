//! Truncated formal coordinate changes between graded manifolds, and their text format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactalg::{GradedSpace, Rational};
use crate::formalgeo::{Coordinates, Model, Poly};

/// A formal map `F: source → target`, stored as the pullbacks `F*(u)` of the target
/// coordinate functions `u` (positions first, then momenta) written in source coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMap {
    source: Coordinates,
    target: Coordinates,
    images: Vec<Poly>,
}

impl CoordMap {
    /// Validates one degree-preserving image without constant term per target variable.
    pub fn new(source: Coordinates, target: Coordinates, images: Vec<Poly>) -> Result<Self> {
        if images.len() != target.ring().nvars() {
            return Err(Error::invalid("a coordinate map needs one image per target variable"));
        }
        for (v, img) in images.iter().enumerate() {
            let want = target.ring().var_degree(v);
            for (m, _) in img.terms() {
                if m.0.len() != source.ring().nvars() {
                    return Err(Error::invalid("image written in the wrong number of variables"));
                }
                if m.order() == 0 {
                    return Err(Error::invalid(format!("image of {} has a constant term", target.ring().var_name(v))));
                }
                if source.ring().monomial_degree(m) != want {
                    return Err(Error::invalid(format!("image of {} is not of degree {want}", target.ring().var_name(v))));
                }
            }
        }
        let images = images.iter().map(|p| source.truncate(p)).collect();
        Ok(CoordMap { source, target, images })
    }

    pub fn identity(c: &Coordinates) -> Self {
        let images = (0..c.ring().nvars()).map(|v| c.ring().var(v)).collect();
        CoordMap { source: c.clone(), target: c.clone(), images }
    }

    pub fn source(&self) -> &Coordinates {
        &self.source
    }

    pub fn target(&self) -> &Coordinates {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn order(&self) -> usize {
        self.source.order()
    }

    /// `F*g` for a function `g` on the target, truncated at the source order.
    pub fn pullback(&self, g: &Poly) -> Result<Poly> {
        Ok(self.source.truncate(&self.source.ring().substitute(&self.images, g)?))
    }

    /// `outer ∘ self`.
    pub fn compose(&self, outer: &CoordMap) -> Result<CoordMap> {
        if outer.source.ring().nvars() != self.target.ring().nvars() {
            return Err(Error::invalid("maps are not composable"));
        }
        let images = outer.images.iter().map(|img| self.pullback(img)).collect::<Result<Vec<_>>>()?;
        CoordMap::new(self.source.clone(), outer.target.clone(), images)
    }

    /// Replaces every image by `T(image)` for an algebra map `T` on source functions.
    pub fn map_images(&self, mut f: impl FnMut(&Poly) -> Result<Poly>) -> Result<CoordMap> {
        let images = self.images.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        CoordMap::new(self.source.clone(), self.target.clone(), images)
    }

    /// Matrix `[target var][source var]` of the linear part.
    pub fn linear_part(&self) -> Vec<Vec<Rational>> {
        let n = self.source.ring().nvars();
        self.images
            .iter()
            .map(|img| {
                let lin = img.component(1);
                (0..n).map(|v| lin.coeff(self.source.ring().var(v).terms().next().expect("variable").0)).collect()
            })
            .collect()
    }

    /// Text form: header, order, both bases and variable names, then `name = image` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("coordmap 1\nmodel {}\norder {}\n", self.source.model(), self.order());
        for (tag, c) in [("source", &self.source), ("target", &self.target)] {
            let _ = write!(s, "{tag}-basis");
            for (l, d) in c.space().basis() {
                let _ = write!(s, " {l}:{d}");
            }
            let _ = write!(s, "\n{tag}-vars");
            for v in 0..c.ring().nvars() {
                let _ = write!(s, " {}", c.ring().var_name(v));
            }
            s.push('\n');
        }
        for (v, img) in self.images.iter().enumerate() {
            let _ = writeln!(s, "{} = {}", self.target.ring().var_name(v), self.source.format(img));
        }
        s
    }

    /// Parses [`CoordMap::to_text`]; `*-vars` lines are optional and default to the standard
    /// names. Unlisted target variables map to zero.
    pub fn parse(text: &str) -> Result<Self> {
        let mut model = None;
        let mut order = None;
        let mut bases: [Option<GradedSpace>; 2] = [None, None];
        let mut names: [Option<Vec<String>>; 2] = [None, None];
        let mut coords: Option<(Coordinates, Coordinates)> = None;
        let mut images: Vec<Poly> = Vec::new();
        let mut seen_header = false;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |e: Error| match e {
                Error::InvalidInput(msg) => Error::parse(line_no, msg),
                other => other,
            };
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            if !seen_header {
                if key != "coordmap" || rest != "1" {
                    return Err(Error::parse(line_no, "expected header `coordmap 1`"));
                }
                seen_header = true;
                continue;
            }
            match key {
                "model" => model = Some(rest.parse::<Model>().map_err(err)?),
                "order" => order = Some(rest.parse::<usize>().map_err(|_| Error::parse(line_no, "bad order"))?),
                "source-basis" | "target-basis" => {
                    let mut basis = Vec::new();
                    for tok in rest.split_whitespace() {
                        let (l, d) = tok.split_once(':').ok_or_else(|| Error::parse(line_no, format!("basis entry `{tok}` needs label:degree")))?;
                        let d: i32 = d.parse().map_err(|_| Error::parse(line_no, format!("bad degree in `{tok}`")))?;
                        basis.push((l.to_string(), d));
                    }
                    bases[usize::from(key == "target-basis")] = Some(GradedSpace::new(basis).map_err(err)?);
                }
                "source-vars" | "target-vars" => {
                    names[usize::from(key == "target-vars")] = Some(rest.split_whitespace().map(str::to_string).collect());
                }
                _ => {
                    if coords.is_none() {
                        let (Some(md), Some(n), Some(sb), Some(tb)) = (model, order, bases[0].as_ref(), bases[1].as_ref()) else {
                            return Err(Error::parse(line_no, "model, order and both bases must precede the images"));
                        };
                        let build = |b: &GradedSpace, nm: &Option<Vec<String>>| -> Result<Coordinates> {
                            let c = Coordinates::new(b, md, n);
                            match nm {
                                Some(v) => c.renamed(v.clone()),
                                None => Ok(c),
                            }
                        };
                        let (s, t) = (build(sb, &names[0]).map_err(err)?, build(tb, &names[1]).map_err(err)?);
                        images = vec![Poly::zero(); t.ring().nvars()];
                        coords = Some((s, t));
                    }
                    let (s, t) = coords.as_ref().expect("set above");
                    let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::parse(line_no, "expected `variable = polynomial`"))?;
                    let v = (0..t.ring().nvars())
                        .find(|&v| t.ring().var_name(v) == lhs.trim())
                        .ok_or_else(|| Error::parse(line_no, format!("unknown target variable `{}`", lhs.trim())))?;
                    images[v] = s.ring().parse(rhs).map_err(err)?;
                }
            }
        }
        let (s, t) = coords.ok_or_else(|| Error::parse(text.lines().count().max(1), "no images given"))?;
        CoordMap::new(s, t, images)
    }
}
