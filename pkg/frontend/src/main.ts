import { mount } from "./app.js";

const app = mount();
void app.start();
