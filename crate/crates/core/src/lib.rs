pub mod certificate;
pub mod cli;
pub mod cliques;
pub mod generators;
pub mod graph;
pub mod interval;
pub mod io;
pub mod model;
pub mod nhca;
pub mod ones;
pub mod oracle;
pub mod orientation;
pub mod phca;
pub mod uhca;
