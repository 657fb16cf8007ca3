pub(crate) use crate::instances::{
    four_agent_network as net4, four_agent_noise as noise4, symmetric_pair as sym2,
};
